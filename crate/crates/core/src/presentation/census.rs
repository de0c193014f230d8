use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::abc::{check_abc, AbcStatus};
use super::homology::orbit_model;
use super::sigma::{validate_sigma, SigmaMap};
use crate::error::{Error, Result};
use crate::homology::{build_ctilde, HomologyGroup};

/// Largest alphabet the census accepts.
pub const MAX_CENSUS_SIZE: usize = 4;

/// Bound used for the (a)(b)(c) check of each class.
pub const CENSUS_LENGTH_BOUND: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusClass {
    pub relations: Vec<String>,
    /// Number of valid σ relabelling to this one.
    pub raw_count: usize,
    pub abc: AbcStatus,
    pub homology: Vec<HomologyGroup>,
    pub cohomology: Vec<HomologyGroup>,
    #[serde(skip)]
    pub sigma: SigmaMap,
}

impl CensusClass {
    pub fn signature(&self) -> String {
        self.homology.iter().map(|h| h.to_string()).join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub size: usize,
    /// Maps satisfying (*) and (**), the only ones that can pass.
    pub candidates: u64,
    pub raw_valid: usize,
    pub canonical: usize,
    pub classes: Vec<CensusClass>,
}

impl CensusRow {
    /// Homology signature `H_0, …, H_n` with the number of classes having it.
    pub fn signatures(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.signature()).or_insert(0) += 1;
        }
        m
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "|Σ| = {}: {} valid presentations (canonical), {} raw, {} candidates\n",
            self.size, self.canonical, self.raw_valid, self.candidates
        );
        for c in &self.classes {
            out.push_str(&format!(
                "  ⟨ {} ⟩  [{} raw]  H_* = {}\n",
                c.relations.join(", "),
                c.raw_count,
                c.signature()
            ));
        }
        for (sig, count) in self.signatures() {
            out.push_str(&format!("  signature {sig}: {count}\n"));
        }
        out
    }
}

/// Every map satisfying (*) and (**): a bijection of the unordered pairs
/// `{a, b}`, `a < b`, with an orientation for each image.
pub fn candidate_maps(n: usize) -> Vec<SigmaMap> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let m = pairs.len();
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    perms
        .par_iter()
        .flat_map_iter(|perm| {
            let pairs = &pairs;
            (0..1u32 << m).map(move |orient| {
                let mut table: Vec<Vec<(usize, usize)>> = (0..n).map(|a| (0..n).map(|b| (a, b)).collect()).collect();
                for (idx, &(a, b)) in pairs.iter().enumerate() {
                    let (x, y) = pairs[perm[idx]];
                    let (x, y) = if orient >> idx & 1 == 1 { (y, x) } else { (x, y) };
                    table[a][b] = (x, y);
                    table[b][a] = (y, x);
                }
                SigmaMap::new(SigmaMap::default_alphabet(n), table).expect("valid indices")
            })
        })
        .collect()
}

/// Smallest relabelling of `s`.
pub fn canonical_form(s: &SigmaMap) -> SigmaMap {
    (0..s.size()).permutations(s.size()).map(|p| s.relabel(&p)).min().expect("at least one permutation")
}

/// All valid σ for each size, grouped up to relabelling, with homology and
/// cohomology signatures.
pub fn census(sizes: &[usize]) -> Result<Vec<CensusRow>> {
    sizes.iter().map(|&n| census_size(n)).collect()
}

fn census_size(n: usize) -> Result<CensusRow> {
    if n == 0 || n > MAX_CENSUS_SIZE {
        return Err(Error::InvalidPresentation(format!("census size {n} outside 1..={MAX_CENSUS_SIZE}")));
    }
    let candidates = candidate_maps(n);
    let valid: Vec<SigmaMap> = candidates.into_par_iter().filter(|s| validate_sigma(s).passes()).collect();
    let total = (1..=n * (n - 1) / 2).product::<usize>() as u64 * (1u64 << (n * (n - 1) / 2));
    let mut groups: BTreeMap<SigmaMap, usize> = BTreeMap::new();
    for c in valid.par_iter().map(canonical_form).collect::<Vec<_>>() {
        *groups.entry(c).or_insert(0) += 1;
    }
    let classes = groups
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(sigma, raw_count)| {
            let model = orbit_model(&sigma, None)?;
            let ct = build_ctilde(&model)?;
            Ok(CensusClass {
                relations: sigma.relations(),
                raw_count,
                abc: check_abc(&sigma, CENSUS_LENGTH_BOUND, None).status(),
                homology: ct.homology_all(),
                cohomology: ct.cohomology_all(),
                sigma,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(classes.iter().map(|c| c.raw_count).sum::<usize>(), valid.len());
    let distinct: BTreeSet<&SigmaMap> = valid.iter().collect();
    debug_assert_eq!(distinct.len(), valid.len());
    Ok(CensusRow { size: n, candidates: total, raw_valid: valid.len(), canonical: classes.len(), classes })
}
