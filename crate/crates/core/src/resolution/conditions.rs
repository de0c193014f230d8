use std::collections::BTreeSet;

use serde::Serialize;

use super::cover::CoverSystem;
use crate::semilattice::{FiniteSemilattice, GroupAction};

/// Outcome of checking conditions (i), (ii), (iii); `None` means the
/// condition holds, otherwise the first violation in canonical scan order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub i: Option<String>,
    pub ii: Option<String>,
    pub iii: Option<String>,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.i.is_none() && self.ii.is_none() && self.iii.is_none()
    }

    pub fn first_violation(&self) -> Option<(&'static str, &str)> {
        [("i", &self.i), ("ii", &self.ii), ("iii", &self.iii)]
            .into_iter()
            .find_map(|(name, w)| w.as_deref().map(|w| (name, w)))
    }
}

pub fn check_conditions(
    lattice: &FiniteSemilattice,
    action: &GroupAction,
    covers: &CoverSystem,
) -> ConditionReport {
    ConditionReport {
        i: check_restriction(lattice, covers),
        ii: check_strict_descent(lattice, covers),
        iii: check_invariance(lattice, action, covers),
    }
}

fn fmt_set(lattice: &FiniteSemilattice, xs: &[usize]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| lattice.label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

/// `(d·ℛ)^×`, sorted.
pub(crate) fn restrict(lattice: &FiniteSemilattice, d: usize, members: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = members
        .iter()
        .map(|&f| lattice.product(d, f))
        .filter(|&x| !lattice.is_zero(x))
        .collect();
    set.into_iter().collect()
}

/// (i): for `de != 0` and `ℛ ∈ ℛ(e)`, either `de ∈ (d·ℛ)^×` or `(d·ℛ)^× ∈ ℛ(de)`.
fn check_restriction(lattice: &FiniteSemilattice, covers: &CoverSystem) -> Option<String> {
    for e in lattice.nonzero() {
        for cover in covers.covers(e) {
            for d in lattice.nonzero() {
                let de = lattice.product(d, e);
                if lattice.is_zero(de) {
                    continue;
                }
                let restricted = restrict(lattice, d, &cover.members);
                if restricted.binary_search(&de).is_ok()
                    || covers.covers(de).iter().any(|c| c.members == restricted)
                {
                    continue;
                }
                return Some(format!(
                    "d = {}, e = {}, ℛ = {}: (d·ℛ)^× = {} is not a cover in ℛ({})",
                    lattice.label(d),
                    lattice.label(e),
                    fmt_set(lattice, &cover.members),
                    fmt_set(lattice, &restricted),
                    lattice.label(de)
                ));
            }
        }
    }
    None
}

/// (ii): products of support elements of joins of distinct covers strictly
/// decrease whenever a factor is added to a nonzero partial product.
fn check_strict_descent(lattice: &FiniteSemilattice, covers: &CoverSystem) -> Option<String> {
    for e in lattice.nonzero() {
        let list = covers.covers(e);
        let supports: Vec<Vec<usize>> = list
            .iter()
            .map(|c| lattice.join_unchecked(&c.members).support().collect())
            .collect();
        let r_max = list.len();
        for mask in 1u64..(1u64 << r_max) {
            let chosen: Vec<usize> = (0..r_max).filter(|i| mask & (1 << i) != 0).collect();
            let mut pick = vec![0usize; chosen.len()];
            loop {
                let eps: Vec<usize> = chosen.iter().zip(&pick).map(|(&c, &k)| supports[c][k]).collect();
                let total = lattice.product_of(eps.iter().copied()).unwrap();
                for j in 0..eps.len() {
                    let rest = if eps.len() == 1 {
                        e
                    } else {
                        lattice
                            .product_of(eps.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x))
                            .unwrap()
                    };
                    if !lattice.is_zero(rest) && !lattice.lt(total, rest) {
                        let idx: Vec<String> = chosen.iter().map(|c| c.to_string()).collect();
                        return Some(format!(
                            "e = {}, covers #{}, ε = {}: dropping factor {} gives {} but ε = {} is not strictly below it",
                            lattice.label(e),
                            idx.join(",#"),
                            fmt_set(lattice, &eps),
                            j + 1,
                            lattice.label(rest),
                            lattice.label(total)
                        ));
                    }
                }
                // odometer over the chosen supports
                let mut pos = 0;
                loop {
                    if pos == pick.len() {
                        break;
                    }
                    pick[pos] += 1;
                    if pick[pos] < supports[chosen[pos]].len() {
                        break;
                    }
                    pick[pos] = 0;
                    pos += 1;
                }
                if pos == pick.len() {
                    break;
                }
            }
        }
    }
    None
}

/// (iii): `τ_g(ℛ(e)) = ℛ(τ_g(e))` as sets of covers.
fn check_invariance(
    lattice: &FiniteSemilattice,
    action: &GroupAction,
    covers: &CoverSystem,
) -> Option<String> {
    for g in action.elements() {
        for e in lattice.nonzero() {
            let ge = action.act_element(g, e);
            let moved: BTreeSet<Vec<usize>> = covers
                .covers(e)
                .iter()
                .map(|c| {
                    let mut m: Vec<usize> = c.members.iter().map(|&f| action.act_element(g, f)).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            let target: BTreeSet<Vec<usize>> =
                covers.covers(ge).iter().map(|c| c.members.clone()).collect();
            if moved != target {
                return Some(format!(
                    "g = {}, e = {}: τ_g(ℛ(e)) differs from ℛ({})",
                    action.label(g),
                    lattice.label(e),
                    lattice.label(ge)
                ));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms_cover() -> (FiniteSemilattice, CoverSystem) {
        let e = FiniteSemilattice::boolean(2);
        let top = e.index_of("{1,2}").unwrap();
        let [a, b] = ["{1}", "{2}"].map(|l| e.index_of(l).unwrap());
        let mut lists = vec![Vec::new(); e.len()];
        lists[top] = vec![vec![a, b]];
        let r = CoverSystem::new(&e, lists).unwrap();
        (e, r)
    }

    #[test]
    fn boolean_atom_cover_passes() {
        let (e, r) = atoms_cover();
        let report = check_conditions(&e, &GroupAction::trivial(&e), &r);
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn self_covers_fail_strict_descent() {
        let e = FiniteSemilattice::boolean(2);
        let lists = (0..e.len())
            .map(|x| if e.is_zero(x) { vec![] } else { vec![vec![x]] })
            .collect();
        let r = CoverSystem::new(&e, lists).unwrap();
        let report = check_conditions(&e, &GroupAction::trivial(&e), &r);
        assert!(report.i.is_none());
        assert!(report.iii.is_none());
        assert!(report.ii.is_some());
    }

    #[test]
    fn asymmetric_covers_violate_invariance() {
        let (e, r) = atoms_cover();
        let [a, b] = ["{1}", "{2}"].map(|l| e.index_of(l).unwrap());
        let mut perm: Vec<usize> = (0..e.len()).collect();
        perm.swap(a, b);
        let act = GroupAction::from_generators(&e, &[("s".into(), perm)]).unwrap();
        assert!(check_conditions(&e, &act, &r).passes());
        // a cover at {1} only has no partner at {2}
        let mut lists = vec![Vec::new(); e.len()];
        lists[a] = vec![vec![a]];
        let r = CoverSystem::new(&e, lists).unwrap();
        let report = check_conditions(&e, &act, &r);
        let w = report.iii.expect("violation");
        assert!(w.contains("g = s"), "{w}");
    }
}
