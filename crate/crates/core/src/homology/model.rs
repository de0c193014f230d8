use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::mu::SharpTable;

/// The data the chain complexes are built from: an ordered orbit basis, one
/// matrix `M_i` per cover index (`M_i[e] = [⋁ℛ_i(e)]`, acting on columns) and
/// the `#` table.
#[derive(Debug, Serialize)]
pub struct OrbitModel {
    n: usize,
    orbits: Vec<String>,
    m: Vec<IntMatrix>,
    sharp: SharpTable,
    #[serde(skip)]
    cache: Mutex<HashMap<Vec<usize>, IntMatrix>>,
}

impl Clone for OrbitModel {
    fn clone(&self) -> Self {
        Self::new_unchecked(self.orbits.clone(), self.m.clone(), self.sharp.clone())
    }
}

impl PartialEq for OrbitModel {
    fn eq(&self, other: &Self) -> bool {
        self.orbits == other.orbits && self.m == other.m && self.sharp == other.sharp
    }
}

impl OrbitModel {
    /// Validates shapes, the `#` table and `M_ρ = M_{p#(ρ∖p)} M_p` for every
    /// `ρ` and every `p ∈ ρ`.
    pub fn new(orbits: Vec<String>, m: Vec<IntMatrix>, sharp: SharpTable) -> Result<Self> {
        let b = orbits.len();
        if b == 0 {
            return Err(Error::InvalidModel("empty orbit basis".into()));
        }
        if m.len() != sharp.n() {
            return Err(Error::InvalidModel(format!(
                "{} matrices for a sharp table on {} indices",
                m.len(),
                sharp.n()
            )));
        }
        if let Some(i) = m.iter().position(|x| x.shape() != (b, b)) {
            return Err(Error::InvalidModel(format!("M_{} is not {b}×{b}", i + 1)));
        }
        sharp.validate()?;
        let model = Self::new_unchecked(orbits, m, sharp);
        if let Some(w) = model.factorization_violation()? {
            return Err(Error::InvalidModel(w));
        }
        Ok(model)
    }

    pub(crate) fn new_unchecked(orbits: Vec<String>, m: Vec<IntMatrix>, sharp: SharpTable) -> Self {
        Self { n: sharp.n(), orbits, m, sharp, cache: Mutex::new(HashMap::new()) }
    }

    /// One orbit, every `M_i` the identity: the free transitive case.
    pub fn single_orbit(sharp: SharpTable) -> Result<Self> {
        let m = vec![IntMatrix::identity(1); sharp.n()];
        Self::new(vec!["P".into()], m, sharp)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[String] {
        &self.orbits
    }

    pub fn basis_size(&self) -> usize {
        self.orbits.len()
    }

    pub fn sharp(&self) -> &SharpTable {
        &self.sharp
    }

    /// `M_i`, indexed from 1.
    pub fn m(&self, i: usize) -> &IntMatrix {
        &self.m[i - 1]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.m
    }

    /// `M_ω`, via `M_ω = M_{q#(ω∖q)} M_q` with `q = min ω`; `M_∅ = I`.
    pub fn m_omega(&self, omega: &[usize]) -> Result<IntMatrix> {
        let mut key = omega.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(x) = self.cache.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let value = match key.split_first() {
            None => IntMatrix::identity(self.basis_size()),
            Some((&q, rest)) => {
                if q == 0 || q > self.n {
                    return Err(Error::InvalidModel(format!("no cover index {q}")));
                }
                let moved = self.sharp.sharp_set_single(q, rest)?;
                self.m_omega(&moved)?.mul(&self.m[q - 1])
            }
        };
        self.cache.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// First `(ρ, p)` where extracting `p` instead of `min ρ` changes `M_ρ`.
    pub fn factorization_violation(&self) -> Result<Option<String>> {
        for mask in 1u32..(1 << self.n) {
            let rho: Vec<usize> = (1..=self.n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
            let reference = self.m_omega(&rho)?;
            for &p in &rho[1..] {
                let rest: Vec<usize> = rho.iter().copied().filter(|&q| q != p).collect();
                let other = self.m_omega(&self.sharp.sharp_set_single(p, &rest)?)?.mul(&self.m[p - 1]);
                if other != reference {
                    return Ok(Some(format!("M_ρ for ρ = {rho:?} depends on extracting {p}")));
                }
            }
        }
        Ok(None)
    }
}
