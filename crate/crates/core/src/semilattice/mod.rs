//! Finite semilattices with zero, their integral semigroup rings and group actions.
//!
//! A [`FiniteSemilattice`] is stored as a full product table over an ordered
//! list of labelled elements, one of which is the zero. Elements are referred
//! to by their position in that list; the position order is the canonical
//! order used everywhere (term maps, matrix bases, serialized output).

mod action;
mod io;
mod zlin;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

pub use action::GroupAction;
pub use io::{ActionFile, SemilatticeFile};
pub use zlin::ZLin;

/// Identity of a constructed semilattice, used to reject mixing ring elements
/// of different semilattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemilatticeId(u64);

impl SemilatticeId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        Self(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Clone)]
pub struct FiniteSemilattice {
    id: SemilatticeId,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    zero: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteSemilattice {
    /// Builds a semilattice from labels, the position of zero and a full
    /// product table, checking every semilattice axiom exhaustively.
    pub fn from_table(labels: Vec<String>, zero: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if zero >= n {
            return Err(Error::InvalidSemilattice("zero index out of range".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSemilattice("product table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidSemilattice("product table has out-of-range entries".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidSemilattice(format!("duplicate label `{l}`")));
            }
        }
        let lattice = Self { id: SemilatticeId::fresh(), labels, index, zero, table };
        lattice.check_axioms()?;
        Ok(lattice)
    }

    /// The semilattice of the given sets under intersection. The empty set is
    /// the zero (added if missing); the family must be closed under intersection.
    pub fn from_sets(sets: &[BTreeSet<usize>]) -> Result<Self> {
        let mut family: Vec<BTreeSet<usize>> = Vec::new();
        for s in sets {
            if !s.is_empty() && !family.contains(s) {
                family.push(s.clone());
            }
        }
        family.push(BTreeSet::new());
        let n = family.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let meet: BTreeSet<usize> = family[i].intersection(&family[j]).copied().collect();
                table[i][j] = family.iter().position(|s| *s == meet).ok_or_else(|| {
                    Error::InvalidSemilattice(format!(
                        "family not closed under intersection: {} ∩ {}",
                        set_label(&family[i]),
                        set_label(&family[j])
                    ))
                })?;
            }
        }
        let labels = family.iter().map(set_label).collect();
        Self::from_table(labels, n - 1, table)
    }

    /// All subsets of `{1..atoms}` under intersection.
    pub fn boolean(atoms: usize) -> Self {
        let sets: Vec<BTreeSet<usize>> = (1u32..(1 << atoms))
            .map(|mask| (1..=atoms).filter(|&a| mask & (1 << (a - 1)) != 0).collect())
            .collect();
        Self::from_sets(&sets).expect("power set is closed under intersection")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if self.table[a][a] != a {
                return Err(Error::InvalidSemilattice(format!("{} is not idempotent", self.labels[a])));
            }
            if self.table[self.zero][a] != self.zero {
                return Err(Error::InvalidSemilattice(format!(
                    "zero does not absorb {}",
                    self.labels[a]
                )));
            }
            for b in 0..n {
                if self.table[a][b] != self.table[b][a] {
                    return Err(Error::InvalidSemilattice(format!(
                        "product not commutative at ({}, {})",
                        self.labels[a], self.labels[b]
                    )));
                }
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::InvalidSemilattice(format!(
                            "product not associative at ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> SemilatticeId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// True when zero is the only element.
    pub fn is_trivial(&self) -> bool {
        self.labels.len() == 1
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn is_zero(&self, e: usize) -> bool {
        e == self.zero
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&e| e != self.zero)
    }

    /// Nonzero elements as a vector; position in it is the basis index of `Z[E^×]`.
    pub fn nonzero_basis(&self) -> Vec<usize> {
        self.nonzero().collect()
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Product of a family; the empty product is not defined here.
    pub fn product_of(&self, es: impl IntoIterator<Item = usize>) -> Option<usize> {
        es.into_iter().reduce(|a, b| self.product(a, b))
    }

    /// Natural order: `e <= f` iff `ef = e`.
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.table[e][f] == e
    }

    /// Strict natural order.
    pub fn lt(&self, e: usize, f: usize) -> bool {
        e != f && self.leq(e, f)
    }

    /// Nonzero elements strictly below `e`.
    pub fn strictly_below(&self, e: usize) -> Vec<usize> {
        self.nonzero().filter(|&f| self.lt(f, e)).collect()
    }

    fn require_nonzero(&self, e: usize) -> Result<()> {
        if e >= self.len() {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        if e == self.zero {
            return Err(Error::ZeroElement(self.labels[e].clone()));
        }
        Ok(())
    }

    /// The basis element `e` of `Z[E^×]`; zero maps to the zero ring element.
    pub fn element(&self, e: usize) -> ZLin {
        if e == self.zero {
            ZLin::zero(self.id)
        } else {
            ZLin::from_terms(self.id, [(e, BigInt::one())])
        }
    }

    pub fn zlin_zero(&self) -> ZLin {
        ZLin::zero(self.id)
    }

    /// Builds a ring element from `(element, coefficient)` pairs, summing repeats.
    pub fn zlin(&self, terms: impl IntoIterator<Item = (usize, BigInt)>) -> Result<ZLin> {
        let terms: Vec<(usize, BigInt)> = terms.into_iter().collect();
        for (e, _) in &terms {
            self.require_nonzero(*e)?;
        }
        Ok(ZLin::from_terms(self.id, terms))
    }

    fn check_ambient(&self, x: &ZLin) -> Result<()> {
        if x.ambient() != self.id {
            return Err(Error::MismatchedAmbient);
        }
        Ok(())
    }

    /// Product in `Z[E^×]`; terms landing on zero are dropped.
    pub fn mul(&self, x: &ZLin, y: &ZLin) -> Result<ZLin> {
        self.check_ambient(x)?;
        self.check_ambient(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &ZLin, y: &ZLin) -> ZLin {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for (e, a) in x.terms() {
            for (f, b) in y.terms() {
                let ef = self.product(*e, *f);
                if ef != self.zero {
                    out.push((ef, a * b));
                }
            }
        }
        ZLin::from_terms(self.id, out)
    }

    /// Product of a basis element with a ring element.
    pub fn mul_element(&self, e: usize, x: &ZLin) -> Result<ZLin> {
        self.check_ambient(x)?;
        Ok(self.mul_unchecked(&self.element(e), x))
    }

    /// The join of nonzero elements by inclusion-exclusion:
    /// `sum over nonempty J' of (-1)^(|J'|+1) * prod_{j in J'} e_j`.
    pub fn join(&self, es: &[usize]) -> Result<ZLin> {
        if es.is_empty() {
            return Err(Error::EmptyJoin);
        }
        for &e in es {
            self.require_nonzero(e)?;
        }
        Ok(self.join_unchecked(es))
    }

    /// Iterative form of inclusion-exclusion: `z ∨ e = z + e - z e`.
    pub(crate) fn join_unchecked(&self, es: &[usize]) -> ZLin {
        let mut acc = self.zlin_zero();
        for &e in es {
            let ez = self.mul_unchecked(&self.element(e), &acc);
            acc = acc.add(&self.element(e)).sub(&ez);
        }
        acc
    }

    /// Whether `x` is idempotent in `Z[E^×]`.
    pub fn is_idempotent(&self, x: &ZLin) -> Result<bool> {
        Ok(self.mul(x, x)? == *x)
    }

    /// Maximal elements of the support of `x` in the natural order.
    pub fn maximal_support(&self, x: &ZLin) -> Vec<usize> {
        let support: Vec<usize> = x.support().collect();
        support
            .iter()
            .copied()
            .filter(|&e| !support.iter().any(|&f| self.lt(e, f)))
            .collect()
    }

    /// Coefficient vector of `x` in the basis `E^×` (canonical order).
    pub fn to_vector(&self, x: &ZLin) -> Result<Vec<BigInt>> {
        self.check_ambient(x)?;
        let basis = self.nonzero_basis();
        Ok(basis.iter().map(|&e| x.coefficient(e)).collect())
    }

    pub fn format_zlin(&self, x: &ZLin) -> String {
        x.display_with(|e| self.labels[e].clone())
    }
}

impl fmt::Debug for FiniteSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemilattice")
            .field("labels", &self.labels)
            .field("zero", &self.labels[self.zero])
            .finish()
    }
}

impl PartialEq for FiniteSemilattice {
    /// Structural equality: same labels, zero and table (identity is ignored).
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.zero == other.zero && self.table == other.table
    }
}

pub(crate) fn set_label(s: &BTreeSet<usize>) -> String {
    if s.is_empty() {
        return "0".to_string();
    }
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn boolean_on_two_atoms() {
        let e = FiniteSemilattice::boolean(2);
        assert_eq!(e.len(), 4);
        let one = e.index_of("{1}").unwrap();
        let two = e.index_of("{2}").unwrap();
        let top = e.index_of("{1,2}").unwrap();
        assert!(e.leq(one, top));
        assert!(!e.leq(one, two));
        assert!(e.leq(e.zero(), two));
        assert!(e.leq(top, top));
        assert_eq!(e.product(one, two), e.zero());
    }

    #[test]
    fn rejects_non_idempotent_table() {
        let labels = vec!["a".to_string(), "0".to_string()];
        let err = FiniteSemilattice::from_table(labels, 1, vec![vec![1, 1], vec![1, 1]]);
        assert!(matches!(err, Err(Error::InvalidSemilattice(_))));
    }

    #[test]
    fn rejects_family_not_closed() {
        let err = FiniteSemilattice::from_sets(&[set(&[1, 2]), set(&[2, 3])]);
        assert!(err.is_err());
    }

    #[test]
    fn multiplication_examples() {
        // e = {1,2}, f = {2,3}, ef = g = {2}
        let e = FiniteSemilattice::from_sets(&[set(&[1, 2]), set(&[2, 3]), set(&[2]), set(&[4])])
            .unwrap();
        let ee = e.index_of("{1,2}").unwrap();
        let ff = e.index_of("{2,3}").unwrap();
        let gg = e.index_of("{2}").unwrap();
        let hh = e.index_of("{4}").unwrap();
        let x = e.element(ee);
        assert_eq!(e.mul(&x, &x).unwrap(), x);
        let two_e = e.zlin([(ee, b(2))]).unwrap();
        let three_h = e.zlin([(hh, b(3))]).unwrap();
        assert!(e.mul(&two_e, &three_h).unwrap().is_zero());
        let sum = e.element(ee).add(&e.element(ff));
        assert_eq!(e.mul(&sum, &x).unwrap(), e.element(ee).add(&e.element(gg)));
    }

    #[test]
    fn join_examples() {
        let e = FiniteSemilattice::from_sets(&[
            set(&[1, 2, 3]),
            set(&[1, 2]),
            set(&[1, 3]),
            set(&[2, 3]),
            set(&[1]),
            set(&[2]),
            set(&[3]),
        ])
        .unwrap();
        let [a, bb, c] = ["{1,2}", "{1,3}", "{2,3}"].map(|l| e.index_of(l).unwrap());
        assert_eq!(e.join(&[a]).unwrap(), e.element(a));
        let ab = e.product(a, bb);
        let expected = e.zlin([(a, b(1)), (bb, b(1)), (ab, b(-1))]).unwrap();
        assert_eq!(e.join(&[a, bb]).unwrap(), expected);
        // e + f + g - ef - eg - fg + efg, expanded by hand
        let (ac, bc, abc) = (e.product(a, c), e.product(bb, c), e.product(ab, c));
        assert_eq!(abc, e.zero());
        let expected3 = e
            .zlin([(a, b(1)), (bb, b(1)), (c, b(1)), (ab, b(-1)), (ac, b(-1)), (bc, b(-1))])
            .unwrap();
        assert_eq!(e.join(&[a, bb, c]).unwrap(), expected3);
        assert!(matches!(e.join(&[]), Err(Error::EmptyJoin)));
        assert!(matches!(e.join(&[e.zero()]), Err(Error::ZeroElement(_))));
    }

    #[test]
    fn mismatched_ambient_is_rejected() {
        let e = FiniteSemilattice::boolean(2);
        let f = FiniteSemilattice::boolean(2);
        let x = e.element(0);
        let y = f.element(0);
        assert!(matches!(e.mul(&x, &y), Err(Error::MismatchedAmbient)));
    }
}
