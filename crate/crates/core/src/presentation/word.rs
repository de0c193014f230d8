use std::fmt;

use serde::{Deserialize, Serialize};

use super::sigma::SigmaMap;
use crate::error::{Error, Result};

/// A letter with exponent `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub positive: bool,
}

/// A word in the generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedWord {
    pub letters: Vec<Letter>,
}

impl SignedWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn positive(generators: &[usize]) -> Self {
        Self { letters: generators.iter().map(|&g| Letter { generator: g, positive: true }).collect() }
    }

    /// `w⁻¹` for a positive word `w`.
    pub fn negative(generators: &[usize]) -> Self {
        Self::positive(generators).inverse()
    }

    pub fn inverse(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter { generator: l.generator, positive: !l.positive })
            .collect();
        Self { letters }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.positive)
    }

    /// Splits `u·v⁻¹` into `(u, v)` when the word has that shape.
    pub fn split_fraction(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let cut = self.letters.iter().position(|l| !l.positive).unwrap_or(self.letters.len());
        if self.letters[cut..].iter().any(|l| l.positive) {
            return None;
        }
        let u = self.letters[..cut].iter().map(|l| l.generator).collect();
        let v = self.letters[cut..].iter().rev().map(|l| l.generator).collect();
        Some((u, v))
    }

    /// Parses letters from the alphabet, each optionally followed by `⁻¹`
    /// or `^-1`; spaces and `·` are ignored. Longest letter names win.
    pub fn parse(s: &SigmaMap, text: &str) -> Result<Self> {
        let mut names: Vec<(usize, &str)> = s.alphabet().iter().map(|x| x.as_str()).enumerate().collect();
        names.sort_by_key(|(_, x)| std::cmp::Reverse(x.len()));
        let mut rest = text;
        let mut letters = Vec::new();
        loop {
            rest = rest.trim_start_matches([' ', '·']);
            if rest.is_empty() {
                break;
            }
            let (g, name) = names
                .iter()
                .find(|(_, x)| rest.starts_with(x))
                .ok_or_else(|| Error::Parse(format!("unknown letter at `{rest}`")))?;
            rest = &rest[name.len()..];
            let positive = if let Some(r) = rest.strip_prefix("⁻¹") {
                rest = r;
                false
            } else if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                false
            } else {
                true
            };
            letters.push(Letter { generator: *g, positive });
        }
        Ok(Self { letters })
    }

    pub fn display<'a>(&'a self, s: &'a SigmaMap) -> impl fmt::Display + 'a {
        WordDisplay { word: self, sigma: s }
    }
}

struct WordDisplay<'a> {
    word: &'a SignedWord,
    sigma: &'a SigmaMap,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        let single = self.sigma.alphabet().iter().all(|x| x.chars().count() == 1);
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 && !single {
                f.write_str("·")?;
            }
            f.write_str(self.sigma.letter(l.generator))?;
            if !l.positive {
                f.write_str("⁻¹")?;
            }
        }
        Ok(())
    }
}

/// Result of right reversing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reversal {
    /// A word `u·v⁻¹` with `u`, `v` positive.
    Done(SignedWord),
    /// Step budget exhausted.
    Inconclusive(usize),
}

/// Default step budget `10·len²`.
pub fn default_max_steps(len: usize) -> usize {
    10 * len.max(1) * len.max(1)
}

/// Right reversing: repeatedly rewrites the leftmost `a⁻¹b` into `ε` when
/// `a = b` and into `σ_l(a,b)·σ_r(a,b)⁻¹` otherwise.
pub fn right_reverse(w: &SignedWord, s: &SigmaMap, max_steps: usize) -> Reversal {
    let mut letters = w.letters.clone();
    let mut steps = 0;
    let mut start = 0;
    loop {
        let Some(i) = (start..letters.len().saturating_sub(1))
            .find(|&i| !letters[i].positive && letters[i + 1].positive)
        else {
            return Reversal::Done(SignedWord { letters });
        };
        if steps == max_steps {
            return Reversal::Inconclusive(steps);
        }
        steps += 1;
        let before = letters.len();
        let (a, b) = (letters[i].generator, letters[i + 1].generator);
        if a == b {
            letters.drain(i..i + 2);
            debug_assert_eq!(letters.len() + 2, before);
        } else {
            let (x, y) = s.get(a, b);
            letters[i] = Letter { generator: x, positive: true };
            letters[i + 1] = Letter { generator: y, positive: false };
        }
        // everything left of i−1 is already of the form positive·negative
        start = i.saturating_sub(1);
    }
}

fn reverse_fraction(w: &SignedWord, s: &SigmaMap, max_steps: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    match right_reverse(w, s, max_steps) {
        Reversal::Done(r) => Ok(r.split_fraction().expect("reversing ends in u·v⁻¹")),
        Reversal::Inconclusive(n) => Err(Error::Inconclusive(n)),
    }
}

/// Equality of positive words in `P`: `p⁻¹q` reverses to `ε`.
pub fn equal_in_monoid(p: &[usize], q: &[usize], s: &SigmaMap, max_steps: usize) -> Result<bool> {
    let w = SignedWord::negative(p).concat(&SignedWord::positive(q));
    let (u, v) = reverse_fraction(&w, s, max_steps)?;
    Ok(u.is_empty() && v.is_empty())
}

/// The least common right multiple `z` with `zP = pP ∩ qP`, as `p·u` where
/// `p⁻¹q` reverses to `u·v⁻¹`. The symmetric form `q·v` is checked to
/// represent the same element.
pub fn lcm(p: &[usize], q: &[usize], s: &SigmaMap, max_steps: Option<usize>) -> Result<Vec<usize>> {
    let budget = max_steps.unwrap_or_else(|| default_max_steps(p.len() + q.len()));
    let w = SignedWord::negative(p).concat(&SignedWord::positive(q));
    let (u, v) = reverse_fraction(&w, s, budget)?;
    let mut left = p.to_vec();
    left.extend_from_slice(&u);
    let mut right = q.to_vec();
    right.extend_from_slice(&v);
    let check_budget = max_steps.unwrap_or_else(|| default_max_steps(left.len() + right.len()));
    if !equal_in_monoid(&left, &right, s, check_budget)? {
        return Err(Error::InvalidPresentation(format!(
            "p·u and q·v differ for p = {}, q = {}",
            SignedWord::positive(p).display(s),
            SignedWord::positive(q).display(s)
        )));
    }
    Ok(left)
}

/// For pairwise distinct `a, b, c` with `σ(a,b) = (d,e)`, `σ(b,c) = (f,g)` and
/// `σ(e,f) = (j,k)`, the word `(dj)⁻¹a⁻¹c(gk)` must reverse to `ε`. Returns
/// the first triple where it does not.
pub fn cube_identity_violation(s: &SigmaMap, max_steps: Option<usize>) -> Result<Option<String>> {
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let (d, e) = s.get(a, b);
                let (f, g) = s.get(b, c);
                let (j, k) = s.get(e, f);
                let w = SignedWord::negative(&[a, d, j]).concat(&SignedWord::positive(&[c, g, k]));
                let budget = max_steps.unwrap_or_else(|| default_max_steps(w.len()));
                let (u, v) = reverse_fraction(&w, s, budget)?;
                if !u.is_empty() || !v.is_empty() {
                    return Ok(Some(format!(
                        "({},{},{}): {} reverses to {}",
                        s.letter(a),
                        s.letter(b),
                        s.letter(c),
                        w.display(s),
                        SignedWord::positive(&u).concat(&SignedWord::negative(&v)).display(s)
                    )));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::sigma::validate_sigma;

    fn word(s: &SigmaMap, t: &str) -> SignedWord {
        SignedWord::parse(s, t).unwrap()
    }

    #[test]
    fn cancellation_and_flip() {
        let s = SigmaMap::flip(2);
        assert_eq!(right_reverse(&word(&s, "a⁻¹a"), &s, 10), Reversal::Done(SignedWord::empty()));
        let Reversal::Done(r) = right_reverse(&word(&s, "a⁻¹b"), &s, 10) else { panic!() };
        assert_eq!(r.display(&s).to_string(), "ba⁻¹");
    }

    #[test]
    fn lcms_of_generators() {
        let flip = SigmaMap::flip(2);
        assert_eq!(lcm(&[0], &[0], &flip, None).unwrap(), vec![0]);
        assert_eq!(lcm(&[0], &[1], &flip, None).unwrap(), vec![0, 1]);
        assert!(equal_in_monoid(&[0, 1], &[1, 0], &flip, 100).unwrap());
        let id = SigmaMap::identity(2);
        assert_eq!(lcm(&[0], &[1], &id, None).unwrap(), vec![0, 0]);
        assert!(equal_in_monoid(&[0, 0], &[1, 1], &id, 100).unwrap());
        assert!(!equal_in_monoid(&[0, 1], &[1, 0], &id, 100).unwrap());
    }

    #[test]
    fn hexagon_witness_reverses_to_empty() {
        let s = SigmaMap::flip(3);
        assert!(validate_sigma(&s).passes());
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1)] {
            let (d, e) = s.get(a, b);
            let (f, g) = s.get(b, c);
            let (j, k) = s.get(e, f);
            let w = SignedWord::negative(&[d, j])
                .concat(&SignedWord::negative(&[a]))
                .concat(&SignedWord::positive(&[c, g, k]));
            assert_eq!(right_reverse(&w, &s, 1000), Reversal::Done(SignedWord::empty()));
        }
    }

    #[test]
    fn cube_identity_for_examples() {
        for s in [SigmaMap::flip(3), SigmaMap::flip(2), SigmaMap::identity(2)] {
            assert_eq!(cube_identity_violation(&s, None).unwrap(), None);
        }
    }

    #[test]
    fn budget_is_respected() {
        let s = SigmaMap::flip(2);
        let w = word(&s, "a⁻¹b⁻¹ab");
        assert_eq!(right_reverse(&w, &s, 1), Reversal::Inconclusive(1));
        assert!(matches!(right_reverse(&w, &s, 100), Reversal::Done(_)));
    }

    #[test]
    fn parse_and_print() {
        let s = SigmaMap::identity(2);
        let w = word(&s, "a b^-1 · a⁻¹");
        assert_eq!(w.display(&s).to_string(), "ab⁻¹a⁻¹");
        assert_eq!(w.inverse().inverse(), w);
        assert!(SignedWord::parse(&s, "ax").is_err());
    }
}
