use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::matrix_value;
use crate::linalg::{smith_normal_form, IntMatrix};

/// Free chain groups `C_0, …, C_top` with boundaries `∂_k: C_k → C_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    labels: Vec<Vec<String>>,
    /// `boundaries[k]` is `∂_k` as a `rank(k−1) × rank(k)` matrix; `∂_0` is `0 × rank(0)`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `boundaries[k−1]` is `∂_k` for `k = 1..labels.len()−1`.
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if labels.is_empty() || boundaries.len() + 1 != labels.len() {
            return Err(Error::InvalidModel("one boundary per positive degree expected".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let expected = (labels[k].len(), labels[k + 1].len());
            if d.shape() != expected {
                return Err(Error::InvalidModel(format!(
                    "∂_{} has shape {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    expected
                )));
            }
        }
        let mut all = vec![IntMatrix::zeros(0, labels[0].len())];
        all.extend(boundaries);
        Ok(Self { labels, boundaries: all })
    }

    /// Highest degree carrying a chain group (possibly of rank zero).
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, |l| l.len())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], |l| l.as_slice())
    }

    /// `∂_k`; zero matrices of the right shape outside the stored range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(k.saturating_sub(1)), self.rank(k)),
        }
    }

    /// First `k` with `∂_k ∂_{k+1} ≠ 0`.
    pub fn square_violation(&self) -> Option<usize> {
        (1..self.top()).find(|&k| !self.boundaries[k].mul(&self.boundaries[k + 1]).is_zero())
    }

    /// `H_k = ker ∂_k / im ∂_{k+1}`.
    pub fn homology(&self, k: usize) -> HomologyGroup {
        if k > self.top() {
            return HomologyGroup::zero();
        }
        let out = smith_normal_form(&self.boundary(k), false);
        let inc = smith_normal_form(&self.boundary(k + 1), false);
        HomologyGroup::new(self.rank(k) - out.rank() - inc.rank(), inc.torsion())
    }

    /// `H^k = ker ∂_{k+1}ᵀ / im ∂_kᵀ`.
    pub fn cohomology(&self, k: usize) -> HomologyGroup {
        if k > self.top() {
            return HomologyGroup::zero();
        }
        let out = smith_normal_form(&self.boundary(k + 1).transpose(), false);
        let inc = smith_normal_form(&self.boundary(k).transpose(), false);
        HomologyGroup::new(self.rank(k) - out.rank() - inc.rank(), inc.torsion())
    }

    pub fn homology_all(&self) -> Vec<HomologyGroup> {
        (0..=self.top()).map(|k| self.homology(k)).collect()
    }

    pub fn cohomology_all(&self) -> Vec<HomologyGroup> {
        (0..=self.top()).map(|k| self.cohomology(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks().iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Ranks, labels and the boundary matrices `∂_1, …` in row-major form.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "ranks": self.ranks(),
            "labels": self.labels,
            "boundaries": self.boundaries[1..].iter().map(matrix_value).collect::<Vec<_>>(),
        })
    }
}

/// `ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_t` with `d_1 | d_2 | …` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn new(free_rank: usize, mut torsion: Vec<BigInt>) -> Self {
        torsion.retain(|d| !d.is_one());
        Self { free_rank, torsion }
    }

    pub fn zero() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn divisibility_holds(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("ℤ".to_string()),
            r => terms.push(format!("ℤ^{r}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" ⊕ "))
        }
    }
}

mod torsion_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::json::int_value;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(int_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("torsion must be an integer")),
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
                _ => Err(serde::de::Error::custom("torsion must be an integer")),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn klein_type_complex() {
        let d1 = IntMatrix::zeros(1, 2);
        let d2 = IntMatrix::from_rows(&[vec![-2], vec![2]]);
        let cx = ChainComplex::new(vec![labels(1), labels(2), labels(1)], vec![d1, d2]).unwrap();
        assert_eq!(cx.square_violation(), None);
        assert_eq!(cx.homology(0), HomologyGroup::free(1));
        assert_eq!(cx.homology(1), HomologyGroup::new(1, vec![2.into()]));
        assert_eq!(cx.homology(2), HomologyGroup::zero());
        assert_eq!(cx.homology(5), HomologyGroup::zero());
        assert_eq!(cx.cohomology(0), HomologyGroup::free(1));
        assert_eq!(cx.cohomology(1), HomologyGroup::free(1));
        assert_eq!(cx.cohomology(2), HomologyGroup::new(0, vec![2.into()]));
        assert_eq!(cx.homology(1).to_string(), "ℤ ⊕ ℤ/2");
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = ChainComplex::new(vec![labels(1), labels(2)], vec![IntMatrix::zeros(2, 2)]);
        assert!(r.is_err());
    }

    #[test]
    fn nonzero_square_detected() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        let cx = ChainComplex::new(vec![labels(1), labels(1), labels(1)], vec![d1, d2]).unwrap();
        assert_eq!(cx.square_violation(), Some(1));
    }

    #[test]
    fn display_and_json() {
        let g = HomologyGroup::new(2, vec![2.into(), 6.into()]);
        assert_eq!(g.to_string(), "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/6");
        assert!(g.divisibility_holds());
        assert_eq!(HomologyGroup::zero().to_string(), "0");
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"free_rank":2,"torsion":[2,6]}"#);
        assert_eq!(serde_json::from_str::<HomologyGroup>(&text).unwrap(), g);
    }
}
