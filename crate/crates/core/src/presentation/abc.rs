use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sigma::SigmaMap;
use super::word::{default_max_steps, lcm, right_reverse, Reversal, SignedWord};
use crate::error::Error;

pub const DEFAULT_LENGTH_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbcStatus {
    /// Verified up to the bound; not a proof.
    Verified,
    Violated,
    Inconclusive,
}

/// Bounded check of quasi-lattice order (a), the one-step extension property
/// (b) and strict containment (c).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcReport {
    pub bound: usize,
    /// Every relation has both sides of length 2, so `P` has no nontrivial
    /// units.
    pub homogeneous: bool,
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    /// First computation that ran out of steps.
    pub inconclusive: Option<String>,
}

impl AbcReport {
    pub fn status(&self) -> AbcStatus {
        if !self.homogeneous || self.a.is_some() || self.b.is_some() || self.c.is_some() {
            AbcStatus::Violated
        } else if self.inconclusive.is_some() {
            AbcStatus::Inconclusive
        } else {
            AbcStatus::Verified
        }
    }

    pub fn summary(&self) -> String {
        match self.status() {
            AbcStatus::Verified => format!("(a)(b)(c) verified up to L = {}", self.bound),
            AbcStatus::Violated => {
                let w = [("a", &self.a), ("b", &self.b), ("c", &self.c)]
                    .iter()
                    .find_map(|(n, w)| w.as_ref().map(|w| format!("({n}) fails: {w}")))
                    .unwrap_or_else(|| "relations are not length preserving".into());
                w
            }
            AbcStatus::Inconclusive => {
                format!("inconclusive at L = {}: {}", self.bound, self.inconclusive.as_deref().unwrap_or(""))
            }
        }
    }
}

enum Outcome {
    Violation(String),
    Inconclusive(String),
}

/// Positive words of length at most `bound`, shortest first, each length in
/// lexicographic order.
pub fn positive_words(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..bound {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Checks (a), (b), (c) for all words of length at most `bound`.
pub fn check_abc(s: &SigmaMap, bound: usize, max_steps: Option<usize>) -> AbcReport {
    let n = s.size();
    let show = |w: &[usize]| SignedWord::positive(w).display(s).to_string();
    let words = positive_words(n, bound);
    let lcm_of = |p: &[usize], q: &[usize]| -> Result<Vec<usize>, Outcome> {
        lcm(p, q, s, max_steps).map_err(|e| match e {
            Error::Inconclusive(k) => Outcome::Inconclusive(format!("lcm({}, {}) after {k} steps", show(p), show(q))),
            other => Outcome::Violation(other.to_string()),
        })
    };
    let mut report =
        AbcReport { bound, homogeneous: true, a: None, b: None, c: None, inconclusive: None };
    let record = |slot: &mut Option<String>, inconclusive: &mut Option<String>, o: Outcome| match o {
        Outcome::Violation(w) => *slot = Some(w),
        Outcome::Inconclusive(w) => {
            inconclusive.get_or_insert(w);
        }
    };

    let pairs: Vec<(usize, usize)> = (0..words.len()).flat_map(|i| (0..words.len()).map(move |j| (i, j))).collect();

    // (a): lcms exist and the two sides agree (checked inside `lcm`)
    let a = pairs.par_iter().find_map_first(|&(i, j)| lcm_of(&words[i], &words[j]).err());
    if let Some(o) = a {
        record(&mut report.a, &mut report.inconclusive, o);
    }

    // (b): lcm(xs, y) is lcm(x, y) or lcm(x, y)·t
    let b = pairs.par_iter().find_map_first(|&(i, j)| {
        let (x, y) = (&words[i], &words[j]);
        let z = match lcm_of(x, y) {
            Ok(z) => z,
            Err(o) => return Some(o),
        };
        (0..n).find_map(|letter| {
            let mut xs = x.clone();
            xs.push(letter);
            let w = match lcm_of(&xs, y) {
                Ok(w) => w,
                Err(o) => return Some(o),
            };
            let probe = SignedWord::negative(&z).concat(&SignedWord::positive(&w));
            let budget = max_steps.unwrap_or_else(|| default_max_steps(probe.len()));
            match right_reverse(&probe, s, budget) {
                Reversal::Inconclusive(k) => {
                    Some(Outcome::Inconclusive(format!("comparing {} with {} after {k} steps", show(&z), show(&w))))
                }
                Reversal::Done(r) => {
                    let (u, v) = r.split_fraction().expect("reversing ends in u·v⁻¹");
                    (!v.is_empty() || u.len() > 1).then(|| {
                        Outcome::Violation(format!(
                            "x = {}, y = {}, s = {}: lcm(xs, y) = {} is not lcm(x, y) = {} times at most one letter",
                            show(x),
                            show(y),
                            s.letter(letter),
                            show(&w),
                            show(&z)
                        ))
                    })
                }
            }
        })
    });
    if let Some(o) = b {
        record(&mut report.b, &mut report.inconclusive, o);
    }

    // (c): sP ∩ ⋂_{t∈F} tP ⊊ ⋂_{t∈F} tP for s ∉ F
    let c = (1..1usize << n).find_map(|mask| {
        let f: Vec<usize> = (0..n).filter(|&t| mask >> t & 1 == 1).collect();
        let mut z = vec![f[0]];
        for &t in &f[1..] {
            match lcm_of(&z, &[t]) {
                Ok(next) => z = next,
                Err(o) => return Some(o),
            }
        }
        (0..n).filter(|t| !f.contains(t)).find_map(|t| {
            let w = match lcm_of(&[t], &z) {
                Ok(w) => w,
                Err(o) => return Some(o),
            };
            // w is a right multiple of z; equal lengths force equality
            (w.len() == z.len()).then(|| {
                let names: Vec<&str> = f.iter().map(|&x| s.letter(x)).collect();
                Outcome::Violation(format!("F = {{{}}}, s = {}: intersection {}P is not strictly smaller", names.join(","), s.letter(t), show(&z)))
            })
        })
    });
    if let Some(o) = c {
        record(&mut report.c, &mut report.inconclusive, o);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_pass_at_three() {
        for s in [SigmaMap::flip(2), SigmaMap::identity(2)] {
            let r = check_abc(&s, 3, None);
            assert_eq!(r.status(), AbcStatus::Verified, "{r:?}");
            assert_eq!(r.summary(), "(a)(b)(c) verified up to L = 3");
        }
    }

    #[test]
    fn strict_containment_for_flip() {
        let s = SigmaMap::flip(2);
        let z = lcm(&[0], &[1], &s, None).unwrap();
        assert_eq!(z, vec![0, 1]);
        assert!(z.len() > 1);
    }

    #[test]
    fn word_enumeration() {
        let w = positive_words(2, 2);
        assert_eq!(w.len(), 7);
        assert_eq!(w[0], Vec::<usize>::new());
        assert_eq!(w[6], vec![1, 1]);
    }

    #[test]
    fn identity_on_three_letters_is_caught() {
        // aa = bb = cc, so cP does not cut aP ∩ bP down
        let s = SigmaMap::identity(3);
        let r = check_abc(&s, 1, None);
        assert_eq!(r.status(), AbcStatus::Violated);
    }
}
