//! Index tuples `μ ∈ Q^n_k`, the partial product `*`, the `#` calculus and
//! the permutation bookkeeping used by the chain complexes.

mod perm;
mod sharp;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use perm::{a_seq, apply, inversions, permutations, rho};
pub use sharp::SharpTable;

/// A tuple `(μ_1|…|μ_k)` of pairwise disjoint non-empty subsets of `{1..n}`.
/// Parts are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mu {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Mu {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut sorted = Vec::with_capacity(parts.len());
        for mut part in parts {
            if part.is_empty() {
                return Err(Error::InvalidMu("empty part".into()));
            }
            part.sort_unstable();
            for &p in &part {
                if p == 0 || p > n {
                    return Err(Error::InvalidMu(format!("{p} is outside 1..{n}")));
                }
                if seen[p] {
                    return Err(Error::InvalidMu(format!("{p} occurs twice")));
                }
                seen[p] = true;
            }
            sorted.push(part);
        }
        Ok(Self { n, parts: sorted })
    }

    pub(crate) fn new_unchecked(n: usize, parts: Vec<Vec<usize>>) -> Self {
        Self { n, parts }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, parts: Vec::new() }
    }

    /// Parses `10,3|4,5,8|7|1,2`; `∅` or the empty string is the empty tuple.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::new(n, parse_parts(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Part `i`, counted from 1.
    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i - 1]
    }

    pub fn contains(&self, p: usize) -> bool {
        self.parts.iter().any(|part| part.contains(&p))
    }

    /// All parts are singletons in increasing order.
    pub fn is_sorted_singletons(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1) && self.parts.windows(2).all(|w| w[0][0] < w[1][0])
    }

    /// `μ^i`: part `i` (from 1) removed.
    pub fn delete(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::InvalidMu(format!("no part {i} in {self}")));
        }
        let mut parts = self.parts.clone();
        parts.remove(i - 1);
        Ok(Self { n: self.n, parts })
    }

    /// `μ(i;ρ)`: part `i` (from 1) enlarged by `ρ`.
    pub fn enlarge(&self, i: usize, rho: &[usize]) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::InvalidMu(format!("no part {i} in {self}")));
        }
        let mut parts = self.parts.clone();
        parts[i - 1].extend_from_slice(rho);
        Self::new(self.n, parts)
    }

    /// `μ|p`.
    pub fn append(&self, p: usize) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.push(vec![p]);
        Self::new(self.n, parts)
    }

    /// `μ,p`; on the empty tuple this is `p`.
    pub fn merge_last(&self, p: usize) -> Result<Self> {
        if self.is_empty() {
            return self.append(p);
        }
        self.enlarge(self.len(), &[p])
    }

    /// `μ * ν`, or `None` where undefined.
    pub fn star(&self, other: &Mu) -> Option<Mu> {
        let (short, long) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if short.is_empty() {
            return Some(long.clone());
        }
        let mut parts = long.parts.clone();
        for (i, part) in short.parts.iter().enumerate() {
            parts[i].extend_from_slice(part);
            parts[i].sort_unstable();
            parts[i].dedup();
        }
        Mu::new(self.n.max(other.n), parts).ok()
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for Mu {
    type Err = Error;

    /// Parses with `n` taken as the largest index present.
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        let n = parts.iter().flatten().copied().max().unwrap_or(0);
        Mu::new(n, parts)
    }
}

fn parse_parts(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s.is_empty() || s == "∅" {
        return Ok(Vec::new());
    }
    s.split('|')
        .map(|part| {
            part.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{x}` in `{s}`"))))
                .collect()
        })
        .collect()
}

/// `Q^n_k` in lexicographic order of parts.
pub fn enumerate_q(n: usize, k: usize) -> Vec<Mu> {
    if k > n {
        return Vec::new();
    }
    let subsets: Vec<(u32, Vec<usize>)> = (1u32..(1 << n))
        .map(|m| (m, (1..=n).filter(|p| m & (1 << (p - 1)) != 0).collect()))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        subsets: &[(u32, Vec<usize>)],
        used: u32,
        k: usize,
        n: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Mu>,
    ) {
        if stack.len() == k {
            let parts = stack.iter().map(|&i| subsets[i].1.clone()).collect();
            out.push(Mu::new_unchecked(n, parts));
            return;
        }
        for (i, (m, _)) in subsets.iter().enumerate() {
            if m & used == 0 {
                stack.push(i);
                rec(subsets, used | m, k, n, stack, out);
                stack.pop();
            }
        }
    }
    rec(&subsets, 0, k, n, &mut stack, &mut out);
    out.sort();
    out
}

/// `N^n_k`: increasing tuples of singletons.
pub fn enumerate_n(n: usize, k: usize) -> Vec<Mu> {
    if k > n {
        return Vec::new();
    }
    use itertools::Itertools;
    let mut out: Vec<Mu> = (1..=n)
        .combinations(k)
        .map(|c| Mu::new_unchecked(n, c.into_iter().map(|p| vec![p]).collect()))
        .collect();
    out.sort();
    out
}
