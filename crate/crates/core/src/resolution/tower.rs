use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::Value;

use super::derive::{derive, derive_unchecked, Derivation, Level};
use crate::error::Result;
use crate::json::matrix_value;
use crate::linalg::{kernel_basis, IntMatrix, Lattice};
use crate::semilattice::{FiniteSemilattice, GroupAction};

/// The levels `E_0, E_1, …` with the connecting maps between them.
#[derive(Clone, Debug)]
pub struct ResolutionTower {
    pub levels: Vec<Level>,
    /// `derivations[k]` produced `levels[k + 1]`.
    pub derivations: Vec<Derivation>,
    /// The depth cap was reached before a trivial level.
    pub truncated: bool,
}

/// Derives repeatedly until a trivial level or `max_depth` derivations.
/// The conditions are checked on the input level only; later levels satisfy
/// them by construction (and tests re-check this).
pub fn build_tower(level: Level, max_depth: usize) -> Result<ResolutionTower> {
    let mut levels = vec![level];
    let mut derivations = Vec::new();
    while !levels.last().unwrap().lattice.is_trivial() && derivations.len() < max_depth {
        let current = levels.last().unwrap();
        let (next, der) =
            if derivations.is_empty() { derive(current)? } else { derive_unchecked(current)? };
        levels.push(next);
        derivations.push(der);
    }
    let truncated = !levels.last().unwrap().lattice.is_trivial();
    Ok(ResolutionTower { levels, derivations, truncated })
}

impl ResolutionTower {
    /// Number of nontrivial derived levels.
    pub fn length(&self) -> usize {
        self.levels.iter().skip(1).filter(|l| !l.lattice.is_trivial()).count()
    }

    /// `π_k: Z[E_k^×] → Z[E_{k−1}^×]` for `k >= 1`, when computed.
    pub fn pi(&self, k: usize) -> Option<&IntMatrix> {
        k.checked_sub(1).and_then(|i| self.derivations.get(i)).map(|d| &d.pi)
    }

    pub fn collisions(&self) -> usize {
        self.derivations.iter().map(|d| d.collisions).sum()
    }

    /// Checks `ker π_k = I_k` and `im π_{k+1} = I_k`, where `I_k` is spanned
    /// by the relations `e′ − ⋁ℛ′` of level `k`.
    pub fn verify_exactness(&self, k: usize) -> ExactnessReport {
        let mut report = ExactnessReport { level: k, exact: true, kernel: None, image: None, witness: None };
        let Some(level) = self.levels.get(k) else {
            if self.truncated {
                report.exact = false;
                report.witness = Some(format!("level {k} lies beyond the truncated tower"));
            }
            return report;
        };
        let dim = level.lattice.nonzero().count();
        let relations = Lattice::from_generators(dim, &level.relation_vectors());
        if let Some(pi) = self.pi(k) {
            let kernel = Lattice::from_generators(dim, &kernel_basis(pi));
            let ok = kernel == relations;
            report.kernel = Some(ok);
            if !ok {
                report.exact = false;
                report.witness = Some(lattice_difference(&level.lattice, "ker π", &kernel, "I", &relations));
            }
        }
        if let Some(next) = self.pi(k + 1) {
            let image = Lattice::column_span(next);
            let ok = image == relations;
            report.image = Some(ok);
            if !ok {
                report.exact = false;
                report.witness.get_or_insert_with(|| {
                    lattice_difference(&level.lattice, "im π", &image, "I", &relations)
                });
            }
        } else if dim > 0 && self.truncated {
            report.image = None;
        } else if dim > 0 {
            let ok = relations.rank() == 0;
            report.image = Some(ok);
            if !ok {
                report.exact = false;
                report.witness.get_or_insert_with(|| "relations survive at the top level".into());
            }
        }
        report
    }

    /// Exactness at every computed level.
    pub fn verify_all(&self) -> Vec<ExactnessReport> {
        (0..self.levels.len()).map(|k| self.verify_exactness(k)).collect()
    }

    /// Stabilizers of derived elements lie in the subgroup generated by the
    /// stabilizers of `E_0^×`, and `Stab(e(S)) ⊆ Stab(e)` one level down.
    pub fn stabilizer_check(&self) -> StabilizerReport {
        let base = &self.levels[0];
        let action = &base.action;
        let generators: BTreeSet<usize> =
            base.lattice.nonzero().flat_map(|e| action.stabilizer(e)).collect();
        let allowed = action.subgroup_generated(generators);
        let mut checked = 0;
        for (k, der) in self.derivations.iter().enumerate() {
            let parent = &self.levels[k];
            let child = &self.levels[k + 1];
            for x in child.lattice.nonzero() {
                let stab = child.action.stabilizer(x);
                checked += 1;
                if let Some(&g) = stab.iter().find(|g| !allowed.contains(g)) {
                    return StabilizerReport::failed(
                        &allowed,
                        action,
                        checked,
                        format!(
                            "level {}: {} fixes {} but is not generated by base stabilizers",
                            k + 1,
                            action.label(g),
                            child.lattice.label(x)
                        ),
                    );
                }
                for d in &der.provenance[x] {
                    let parent_stab = parent.action.stabilizer(d.base);
                    if let Some(&g) = stab.difference(&parent_stab).next() {
                        return StabilizerReport::failed(
                            &allowed,
                            action,
                            checked,
                            format!(
                                "level {}: {} fixes {} but moves its base {}",
                                k + 1,
                                action.label(g),
                                child.lattice.label(x),
                                parent.lattice.label(d.base)
                            ),
                        );
                    }
                }
            }
        }
        StabilizerReport {
            holds: true,
            generated_by_stabilizers: allowed.iter().map(|&g| action.label(g).to_string()).collect(),
            checked,
            witness: None,
        }
    }

    /// JSON dump: per-level elements, covers and expansions plus the
    /// connecting matrices.
    pub fn dump(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, level)| {
                let lat = &level.lattice;
                let elements: Vec<&str> = lat.nonzero().map(|e| lat.label(e)).collect();
                let covers = level.covers.to_file(lat).covers;
                let mut entry = serde_json::json!({
                    "index": k,
                    "elements": elements,
                    "covers": covers,
                });
                if k > 0 {
                    let parent = &self.levels[k - 1].lattice;
                    let der = &self.derivations[k - 1];
                    let exp: BTreeMap<&str, String> = lat
                        .nonzero()
                        .map(|e| (lat.label(e), parent.format_zlin(&der.expansions[e])))
                        .collect();
                    entry["expansions"] = serde_json::to_value(exp).unwrap();
                }
                entry
            })
            .collect();
        let maps: Vec<Value> = self.derivations.iter().map(|d| matrix_value(&d.pi)).collect();
        serde_json::json!({
            "length": self.length(),
            "truncated": self.truncated,
            "collisions": self.collisions(),
            "levels": levels,
            "maps": maps,
        })
    }
}

fn lattice_difference(
    lat: &FiniteSemilattice,
    a_name: &str,
    a: &Lattice,
    b_name: &str,
    b: &Lattice,
) -> String {
    let basis = lat.nonzero_basis();
    let show = |v: &[num_bigint::BigInt]| {
        let x = lat.zlin(basis.iter().copied().zip(v.iter().cloned())).expect("nonzero basis");
        lat.format_zlin(&x)
    };
    if let Some(v) = a.first_not_in(b) {
        format!("{} lies in {a_name} but not in {b_name}", show(&v))
    } else if let Some(v) = b.first_not_in(a) {
        format!("{} lies in {b_name} but not in {a_name}", show(&v))
    } else {
        format!("{a_name} and {b_name} differ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub level: usize,
    pub exact: bool,
    /// `ker π_k = I_k`, when `π_k` exists.
    pub kernel: Option<bool>,
    /// `im π_{k+1} = I_k`, when `π_{k+1}` exists.
    pub image: Option<bool>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub holds: bool,
    pub generated_by_stabilizers: Vec<String>,
    pub checked: usize,
    pub witness: Option<String>,
}

impl StabilizerReport {
    fn failed(allowed: &BTreeSet<usize>, action: &GroupAction, checked: usize, witness: String) -> Self {
        Self {
            holds: false,
            generated_by_stabilizers: allowed.iter().map(|&g| action.label(g).to_string()).collect(),
            checked,
            witness: Some(witness),
        }
    }
}

/// For every `e`, every family `J` of at most `max_family` elements strictly
/// below `e` and every `g`: if `g` fixes `e − ⋁J` then it fixes `e`.
/// Returns the first counterexample.
pub fn fix_maximal_idem_check(
    lattice: &FiniteSemilattice,
    action: &GroupAction,
    max_family: usize,
) -> Option<String> {
    for e in lattice.nonzero() {
        let below = lattice.strictly_below(e);
        for size in 0..=max_family.min(below.len()) {
            for family in itertools::Itertools::combinations(below.iter().copied(), size) {
                let x = lattice.element(e).sub(&lattice.join_unchecked(&family));
                for g in action.elements() {
                    if action.act(g, &x).expect("same ambient") == x && action.act_element(g, e) != e {
                        return Some(format!(
                            "{} fixes {} but moves {}",
                            action.label(g),
                            lattice.format_zlin(&x),
                            lattice.label(e)
                        ));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::cover::CoverSystem;
    use crate::resolution::derive::tests::square_level;

    #[test]
    fn boolean_tower_has_length_one_and_is_exact() {
        let e = FiniteSemilattice::boolean(2);
        let top = e.index_of("{1,2}").unwrap();
        let [a, b] = ["{1}", "{2}"].map(|l| e.index_of(l).unwrap());
        let mut lists = vec![Vec::new(); e.len()];
        lists[top] = vec![vec![a, b]];
        let covers = CoverSystem::new(&e, lists).unwrap();
        let tower = build_tower(Level::without_action(e.clone(), covers), 5).unwrap();
        assert_eq!(tower.length(), 1);
        assert!(!tower.truncated);
        let r0 = tower.verify_exactness(0);
        assert!(r0.exact, "{r0:?}");
        assert_eq!(r0.image, Some(true));
        assert!(tower.verify_exactness(1).exact);
        assert!(tower.verify_exactness(7).exact);
        // the image at level 0 is spanned by e − e_1 − e_2
        let expected = e.element(top).sub(&e.element(a)).sub(&e.element(b));
        let col = tower.pi(1).unwrap().column(0);
        assert_eq!(col, e.to_vector(&expected).unwrap());
    }

    #[test]
    fn free_instance_has_length_zero() {
        let e = FiniteSemilattice::boolean(2);
        let covers = CoverSystem::empty(&e);
        let tower = build_tower(Level::without_action(e, covers), 5).unwrap();
        assert_eq!(tower.length(), 0);
        assert!(tower.verify_all().iter().all(|r| r.exact));
    }

    #[test]
    fn square_tower_is_exact_and_bounded() {
        let tower = build_tower(square_level(), 6).unwrap();
        assert!(!tower.truncated);
        assert!(tower.length() <= 2);
        assert_eq!(tower.length(), 2);
        for r in tower.verify_all() {
            assert!(r.exact, "{r:?}");
        }
        assert!(tower.stabilizer_check().holds);
    }

    #[test]
    fn truncation_flag() {
        let tower = build_tower(square_level(), 1).unwrap();
        assert!(tower.truncated);
        assert_eq!(tower.derivations.len(), 1);
    }

    #[test]
    fn dump_is_deterministic() {
        let a = build_tower(square_level(), 6).unwrap().dump().to_string();
        let b = build_tower(square_level(), 6).unwrap().dump().to_string();
        assert_eq!(a, b);
        assert!(a.contains("\"maps\""));
    }
}
