use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Mu;
use crate::error::{Error, Result};

/// The partial map `(i, j) ↦ i#j` for `i ≠ j` in `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SharpTable {
    n: usize,
    /// Row-major `n × n`, diagonal unused.
    table: Vec<Option<usize>>,
}

impl SharpTable {
    /// Empty table.
    pub fn partial(n: usize) -> Self {
        Self { n, table: vec![None; n * n] }
    }

    /// Total table from `f(i, j)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut t = Self::partial(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    t.set(i, j, f(i, j))?;
                }
            }
        }
        Ok(t)
    }

    /// `i#j = j`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |_, j| j).expect("values in range")
    }

    /// Table from rows: `rows[i-1][j-1] = i#j`, diagonal ignored.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModel("sharp table must be square".into()));
        }
        Self::from_fn(n, |i, j| rows[i - 1][j - 1])
    }

    pub fn set(&mut self, i: usize, j: usize, value: usize) -> Result<()> {
        let n = self.n;
        if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) || !(1..=n).contains(&value) {
            return Err(Error::InvalidModel(format!("{i}#{j} = {value} out of range for n = {n}")));
        }
        self.table[(i - 1) * n + j - 1] = Some(value);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Result<usize> {
        if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::MissingSharp(i, j));
        }
        self.table[(i - 1) * self.n + j - 1].ok_or(Error::MissingSharp(i, j))
    }

    /// Rows as vectors with `0` on the diagonal and for missing entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.table[i * self.n + j].unwrap_or(0)).collect()).collect()
    }

    pub fn is_total(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| i == j || self.get(i, j).is_ok()))
    }

    /// `i#j ≠ i#k` for pairwise distinct `i, j, k`; returns a violating triple.
    pub fn row_injectivity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in j + 1..=self.n {
                    if i == j || i == k {
                        continue;
                    }
                    if let (Ok(a), Ok(b)) = (self.get(i, j), self.get(i, k)) {
                        if a == b {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// `i#ρ = {i#p : p ∈ ρ}`.
    pub fn sharp_set_single(&self, i: usize, rho: &[usize]) -> Result<Vec<usize>> {
        let mut out = rho.iter().map(|&p| self.get(i, p)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// `ω#j`, extracting `q = min ω` at each step.
    pub fn sharp(&self, omega: &[usize], j: usize) -> Result<usize> {
        let mut omega: Vec<usize> = omega.to_vec();
        omega.sort_unstable();
        omega.dedup();
        if omega.contains(&j) {
            return Err(Error::InvalidMu(format!("{j} lies in ω")));
        }
        let mut j = j;
        while let Some((&q, rest)) = omega.split_first() {
            let next = self.sharp_set_single(q, rest)?;
            j = self.get(q, j)?;
            omega = next;
        }
        Ok(j)
    }

    /// `ω#ρ = {ω#p : p ∈ ρ}`, sorted.
    pub fn sharp_set(&self, omega: &[usize], rho: &[usize]) -> Result<Vec<usize>> {
        let mut out = rho.iter().map(|&p| self.sharp(omega, p)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// `ω#μ`, applied part by part; `∅#μ = μ`.
    pub fn sharp_mu(&self, omega: &[usize], mu: &Mu) -> Result<Mu> {
        if omega.is_empty() {
            return Ok(mu.clone());
        }
        let parts = mu.parts().iter().map(|p| self.sharp_set(omega, p)).collect::<Result<Vec<_>>>()?;
        Mu::new(mu.n(), parts)
    }

    /// Every value of `ω#j` reachable by some extraction order.
    pub fn sharp_all_orders(&self, omega: &[usize], j: usize) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        if omega.is_empty() {
            out.insert(j);
            return Ok(out);
        }
        for (idx, &q) in omega.iter().enumerate() {
            let rest: Vec<usize> =
                omega.iter().enumerate().filter(|&(t, _)| t != idx).map(|(_, &p)| p).collect();
            let moved = rest.iter().map(|&p| self.get(q, p)).collect::<Result<Vec<_>>>()?;
            out.extend(self.sharp_all_orders(&moved, self.get(q, j)?)?);
        }
        Ok(out)
    }

    /// Checks the table is total, row-injective and that `ω#j` does not
    /// depend on the extraction order.
    pub fn validate(&self) -> Result<()> {
        if !self.is_total() {
            let (i, j) = (1..=self.n)
                .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && self.get(i, j).is_err())
                .unwrap();
            return Err(Error::MissingSharp(i, j));
        }
        if let Some((i, j, k)) = self.row_injectivity_violation() {
            return Err(Error::InvalidModel(format!("{i}#{j} = {i}#{k}")));
        }
        // the pairwise identity (p#q)#(p#j) = (q#p)#(q#j) implies the general case,
        // which the tests confirm separately
        for p in 1..=self.n {
            for q in p + 1..=self.n {
                for j in 1..=self.n {
                    if j == p || j == q {
                        continue;
                    }
                    let a = self.get(self.get(p, q)?, self.get(p, j)?)?;
                    let b = self.get(self.get(q, p)?, self.get(q, j)?)?;
                    if a != b {
                        return Err(Error::InvalidModel(format!(
                            "{{{p},{q}}}#{j} depends on the order: {a} vs {b}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
