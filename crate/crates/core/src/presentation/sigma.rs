use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A map `σ: Σ × Σ → Σ × Σ` stored as the two tables `σ_l`, `σ_r`.
/// Letters are indices into the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaMap {
    alphabet: Vec<String>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl SigmaMap {
    /// `table[a][b] = σ(a, b)`.
    pub fn new(alphabet: Vec<String>, table: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("empty alphabet".into()));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::InvalidPresentation(format!("duplicate letter `{a}`")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPresentation("σ must be given on every pair".into()));
        }
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for row in &table {
            for &(x, y) in row {
                if x >= n || y >= n {
                    return Err(Error::InvalidPresentation("σ leaves the alphabet".into()));
                }
                left.push(x);
                right.push(y);
            }
        }
        Ok(Self { alphabet, left, right })
    }

    /// Single-letter names `a, b, c, …`.
    pub fn default_alphabet(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    /// `σ(a,b) = (b,a)`: the free abelian group.
    pub fn flip(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (b, a)).collect()).collect();
        Self::new(Self::default_alphabet(n), table).expect("valid table")
    }

    /// `σ = id`: relations `a·a = b·b`.
    pub fn identity(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a, b)).collect()).collect();
        Self::new(Self::default_alphabet(n), table).expect("valid table")
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter(&self, a: usize) -> &str {
        &self.alphabet[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|x| x == name)
    }

    pub fn get(&self, a: usize, b: usize) -> (usize, usize) {
        let i = a * self.size() + b;
        (self.left[i], self.right[i])
    }

    pub fn left(&self, a: usize, b: usize) -> usize {
        self.left[a * self.size() + b]
    }

    pub fn right(&self, a: usize, b: usize) -> usize {
        self.right[a * self.size() + b]
    }

    pub fn table(&self) -> Vec<Vec<(usize, usize)>> {
        (0..self.size()).map(|a| (0..self.size()).map(|b| self.get(a, b)).collect()).collect()
    }

    /// `σ⁻¹`, when `σ` is a bijection.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size();
        let mut table = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = self.get(a, b);
                if table[x][y].replace((a, b)).is_some() {
                    return None;
                }
            }
        }
        let table = table.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
        Some(Self::new(self.alphabet.clone(), table).expect("same alphabet"))
    }

    /// `σ` conjugated by the relabelling `a ↦ perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size();
        let mut table = vec![vec![(0, 0); n]; n];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = self.get(a, b);
                table[perm[a]][perm[b]] = (perm[x], perm[y]);
            }
        }
        Self::new(self.alphabet.clone(), table).expect("same alphabet")
    }

    /// The relation `a·σ_l(a,b) = b·σ_r(a,b)` as text.
    pub fn relation(&self, a: usize, b: usize) -> String {
        let (x, y) = self.get(a, b);
        format!("{}{} = {}{}", self.letter(a), self.letter(x), self.letter(b), self.letter(y))
    }

    /// One relation per unordered pair `a < b`.
    pub fn relations(&self) -> Vec<String> {
        let n = self.size();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| self.relation(a, b)).collect()
    }
}

impl fmt::Display for SigmaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | {}⟩", self.alphabet.join(", "), self.relations().join(", "))
    }
}

/// Outcome of the four checks, each with a witness when it fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    /// Colliding pairs when `σ` is not a bijection.
    pub bijection: Option<String>,
    pub diagonal: Option<String>,
    pub flip_invariant: Option<String>,
    pub left_injective: Option<String>,
    pub hexagon: Option<String>,
}

impl SigmaReport {
    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }

    /// `(condition, witness)` for every failed check.
    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        [
            ("bijection", &self.bijection),
            ("*", &self.diagonal),
            ("**", &self.flip_invariant),
            ("***", &self.left_injective),
            ("****", &self.hexagon),
        ]
        .into_iter()
        .filter_map(|(name, w)| w.as_deref().map(|w| (name, w)))
        .collect()
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, bool> {
        let failed: Vec<&str> = self.failures().iter().map(|f| f.0).collect();
        ["bijection", "*", "**", "***", "****"].into_iter().map(|c| (c, !failed.contains(&c))).collect()
    }
}

/// Checks bijectivity and conditions (*)–(****); a non-bijective `σ` fails
/// immediately.
pub fn validate_sigma(s: &SigmaMap) -> SigmaReport {
    let mut report = SigmaReport::default();
    let n = s.size();
    let l = |a: usize| s.letter(a);
    let mut preimage: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(&(c, d)) = preimage.get(&s.get(a, b)) {
                let (x, y) = s.get(a, b);
                report.bijection = Some(format!(
                    "σ({},{}) = σ({},{}) = ({},{})",
                    l(c),
                    l(d),
                    l(a),
                    l(b),
                    l(x),
                    l(y)
                ));
                return report;
            }
            preimage.insert(s.get(a, b), (a, b));
        }
    }
    report.diagonal = (0..n).find(|&a| s.get(a, a) != (a, a)).map(|a| l(a).to_string());
    report.flip_invariant = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| s.get(b, a) != (s.right(a, b), s.left(a, b)))
        .map(|(a, b)| format!("σ({},{}) vs σ({},{})", l(a), l(b), l(b), l(a)));
    'outer: for a in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                if x != a && y != a && s.left(a, x) == s.left(a, y) {
                    report.left_injective = Some(format!("σ_l({},{}) = σ_l({},{})", l(a), l(x), l(a), l(y)));
                    break 'outer;
                }
            }
        }
    }
    report.hexagon = hexagon_violation(s).map(|w| format!("σ: {w}")).or_else(|| {
        let inv = s.inverse().expect("bijective");
        hexagon_violation(&inv).map(|w| format!("σ⁻¹: {w}"))
    });
    report
}

/// First triple of pairwise distinct letters that the hexagon does not close.
fn hexagon_violation(s: &SigmaMap) -> Option<String> {
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let (d, e) = s.get(a, b);
                let (f, g) = s.get(b, c);
                let (h, i) = s.get(c, a);
                let (j, k) = s.get(e, f);
                let (k2, l) = s.get(g, h);
                if k2 == k && s.get(i, d) == (l, j) {
                    continue;
                }
                return Some(format!("({},{},{})", s.letter(a), s.letter(b), s.letter(c)));
            }
        }
    }
    None
}
