use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semilattice::FiniteSemilattice;

/// A finite cover of `base`: members below `base` meeting every nonzero
/// element below it. Members are kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub base: usize,
    pub members: Vec<usize>,
}

impl Cover {
    pub fn new(lattice: &FiniteSemilattice, base: usize, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(f) = uncovered(lattice, base, &members)? {
            return Err(Error::InvalidCover(format!(
                "{{{}}} does not cover {}: {} meets no member",
                members.iter().map(|&m| lattice.label(m)).collect::<Vec<_>>().join(", "),
                lattice.label(base),
                lattice.label(f)
            )));
        }
        if let Some(&m) = members.iter().find(|&&m| !lattice.leq(m, base)) {
            return Err(Error::InvalidCover(format!(
                "{} is not below {}",
                lattice.label(m),
                lattice.label(base)
            )));
        }
        Ok(Self { base, members })
    }

    pub(crate) fn new_unchecked(base: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { base, members }
    }
}

/// Whether `members` is a finite cover of `e`.
pub fn is_finite_cover(lattice: &FiniteSemilattice, e: usize, members: &[usize]) -> Result<bool> {
    Ok(uncovered(lattice, e, members)?.is_none()
        && members.iter().all(|&m| lattice.leq(m, e)))
}

/// A nonzero `f <= e` orthogonal to every member, if one exists.
pub fn uncovered(lattice: &FiniteSemilattice, e: usize, members: &[usize]) -> Result<Option<usize>> {
    if e >= lattice.len() {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    if lattice.is_zero(e) {
        return Err(Error::ZeroElement(lattice.label(e).to_string()));
    }
    if members.is_empty() {
        return Err(Error::InvalidCover("empty member set".into()));
    }
    for &m in members {
        if m >= lattice.len() {
            return Err(Error::UnknownElement(format!("#{m}")));
        }
        if lattice.is_zero(m) {
            return Err(Error::ZeroElement(lattice.label(m).to_string()));
        }
    }
    Ok(lattice
        .nonzero()
        .filter(|&f| lattice.leq(f, e))
        .find(|&f| members.iter().all(|&m| lattice.is_zero(lattice.product(f, m)))))
}

/// For every nonzero element an ordered list of finite covers; `ℛ(e)` may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSystem {
    covers: Vec<Vec<Cover>>,
}

impl CoverSystem {
    /// No covers at all.
    pub fn empty(lattice: &FiniteSemilattice) -> Self {
        Self { covers: vec![Vec::new(); lattice.len()] }
    }

    /// Validates each cover; `lists[e]` is the list of member sets of `ℛ(e)`.
    pub fn new(lattice: &FiniteSemilattice, lists: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if lists.len() != lattice.len() {
            return Err(Error::InvalidCover("one cover list per element expected".into()));
        }
        let mut covers = Vec::with_capacity(lists.len());
        for (e, list) in lists.into_iter().enumerate() {
            if lattice.is_zero(e) && !list.is_empty() {
                return Err(Error::InvalidCover("zero carries no covers".into()));
            }
            let mut row: Vec<Cover> = Vec::with_capacity(list.len());
            for members in list {
                let c = Cover::new(lattice, e, &members)?;
                if row.contains(&c) {
                    return Err(Error::InvalidCover(format!(
                        "cover listed twice for {}",
                        lattice.label(e)
                    )));
                }
                row.push(c);
            }
            covers.push(row);
        }
        Ok(Self { covers })
    }

    pub(crate) fn from_covers_unchecked(covers: Vec<Vec<Cover>>) -> Self {
        Self { covers }
    }

    pub fn covers(&self, e: usize) -> &[Cover] {
        &self.covers[e]
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.iter().all(|c| c.is_empty())
    }

    /// `sup_e |ℛ(e)|`.
    pub fn max_covers(&self) -> usize {
        self.covers.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.covers.iter().map(|c| c.len()).sum()
    }

    pub fn from_file(lattice: &FiniteSemilattice, file: &CoverFile) -> Result<Self> {
        let mut lists = vec![Vec::new(); lattice.len()];
        for (label, list) in &file.covers {
            let e = lattice.index_of(label)?;
            for members in list {
                let ids = members.iter().map(|m| lattice.index_of(m)).collect::<Result<Vec<_>>>()?;
                lists[e].push(ids);
            }
        }
        Self::new(lattice, lists)
    }

    pub fn to_file(&self, lattice: &FiniteSemilattice) -> CoverFile {
        let mut covers = BTreeMap::new();
        for (e, row) in self.covers.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let list = row
                .iter()
                .map(|c| c.members.iter().map(|&m| lattice.label(m).to_string()).collect())
                .collect();
            covers.insert(lattice.label(e).to_string(), list);
        }
        CoverFile { covers }
    }
}

/// On-disk form: element label to a list of member-label lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

impl CoverFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
