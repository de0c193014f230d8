use serde::Serialize;

use super::build::{build_c, build_ctilde, chain_map_f};
use super::complex::{ChainComplex, HomologyGroup};
use super::model::OrbitModel;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub c: HomologyGroup,
    pub ctilde: HomologyGroup,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub degrees: Vec<DegreeComparison>,
    /// Every degree has matching free rank and torsion.
    pub groups_agree: bool,
    /// `∂f = fd` in every degree.
    pub chain_map: bool,
    /// The mapping cone of `f` is acyclic, so `f_*` is an isomorphism.
    pub quasi_isomorphism: bool,
    /// First degree with nonzero cone homology.
    pub cone_witness: Option<usize>,
}

impl ComparisonReport {
    pub fn isomorphic(&self) -> bool {
        self.groups_agree && self.chain_map && self.quasi_isomorphism
    }
}

/// First `k` with `∂_k f_k ≠ f_{k−1} d_k`.
pub fn chain_map_violation(model: &OrbitModel, c: &ChainComplex, ct: &ChainComplex) -> Result<Option<usize>> {
    let mut prev = chain_map_f(model, 0)?;
    for k in 1..=model.n() {
        let fk = chain_map_f(model, k)?;
        if c.boundary(k).mul(&fk) != prev.mul(&ct.boundary(k)) {
            return Ok(Some(k));
        }
        prev = fk;
    }
    Ok(None)
}

/// The cone of `f: C̃ → C`: `Cone_k = C̃_{k−1} ⊕ C_k`,
/// `D(a, b) = (−d a, f a + ∂ b)`.
pub fn mapping_cone(model: &OrbitModel, c: &ChainComplex, ct: &ChainComplex) -> Result<ChainComplex> {
    let n = model.n();
    let top = n + 1;
    let label = |k: usize| -> Vec<String> {
        let mut l: Vec<String> = if k == 0 { Vec::new() } else { ct.labels(k - 1).iter().map(|s| format!("~{s}")).collect() };
        l.extend(c.labels(k).iter().cloned());
        l
    };
    let f: Vec<IntMatrix> = (0..=n).map(|k| chain_map_f(model, k)).collect::<Result<_>>()?;
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let (a_src, b_src) = (ct.rank(k - 1), c.rank(k));
        let (a_dst, b_dst) = (if k >= 2 { ct.rank(k - 2) } else { 0 }, c.rank(k - 1));
        let mut d = IntMatrix::zeros(a_dst + b_dst, a_src + b_src);
        if k >= 2 {
            d.add_block(0, 0, &ct.boundary(k - 1).neg());
        }
        d.add_block(a_dst, 0, &f[k - 1]);
        if b_src > 0 {
            d.add_block(a_dst, a_src, &c.boundary(k));
        }
        boundaries.push(d);
    }
    ChainComplex::new((0..=top).map(label).collect(), boundaries)
}

/// Compares `H_*(C̃)` with `H_*(C)` degree by degree and checks that `f`
/// induces an isomorphism.
pub fn compare_homology(model: &OrbitModel) -> Result<ComparisonReport> {
    let n = model.n();
    let c = build_c(model, n)?;
    let ct = build_ctilde(model)?;
    if c.square_violation().is_some() || ct.square_violation().is_some() {
        return Err(Error::InvalidModel("boundary maps do not square to zero".into()));
    }
    let degrees: Vec<DegreeComparison> = (0..=n)
        .map(|k| {
            let (hc, ht) = (c.homology(k), ct.homology(k));
            DegreeComparison { degree: k, equal: hc == ht, c: hc, ctilde: ht }
        })
        .collect();
    let groups_agree = degrees.iter().all(|d| d.equal);
    let chain_map = chain_map_violation(model, &c, &ct)?.is_none();
    let (quasi_isomorphism, cone_witness) = if chain_map {
        let cone = mapping_cone(model, &c, &ct)?;
        let witness = (0..=cone.top()).find(|&k| !cone.homology(k).is_zero());
        (witness.is_none(), witness)
    } else {
        (false, None)
    };
    Ok(ComparisonReport { degrees, groups_agree, chain_map, quasi_isomorphism, cone_witness })
}
