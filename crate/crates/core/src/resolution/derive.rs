use std::collections::HashMap;

use super::conditions::check_conditions;
use super::cover::{Cover, CoverSystem};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::semilattice::{FiniteSemilattice, GroupAction, ZLin};

/// A Γ-semilattice together with its cover system.
#[derive(Clone, Debug)]
pub struct Level {
    pub lattice: FiniteSemilattice,
    pub action: GroupAction,
    pub covers: CoverSystem,
}

impl Level {
    pub fn new(lattice: FiniteSemilattice, action: GroupAction, covers: CoverSystem) -> Result<Self> {
        if action.ambient() != lattice.id() || covers.len() != lattice.len() {
            return Err(Error::MismatchedAmbient);
        }
        Ok(Self { lattice, action, covers })
    }

    /// Level with the trivial group.
    pub fn without_action(lattice: FiniteSemilattice, covers: CoverSystem) -> Self {
        let action = GroupAction::trivial(&lattice);
        Self { lattice, action, covers }
    }

    /// The relation generators `e − ⋁ℛ` as coefficient vectors over `E^×`.
    pub fn relation_vectors(&self) -> Vec<Vec<num_bigint::BigInt>> {
        let mut out = Vec::new();
        for e in self.lattice.nonzero() {
            for c in self.covers.covers(e) {
                let x = self.lattice.element(e).sub(&self.lattice.join_unchecked(&c.members));
                out.push(self.lattice.to_vector(&x).expect("same ambient"));
            }
        }
        out
    }
}

/// A base element together with a non-empty set of indices into `ℛ(base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedElement {
    pub base: usize,
    pub selected: Vec<usize>,
}

/// `∏_{ℛ ∈ selected} (base − ⋁ℛ)` in reduced form.
pub fn expand(lattice: &FiniteSemilattice, covers: &CoverSystem, d: &DerivedElement) -> Result<ZLin> {
    if d.selected.is_empty() {
        return Err(Error::InvalidCover("empty selection".into()));
    }
    let list = covers.covers(d.base);
    let mut acc: Option<ZLin> = None;
    for &i in &d.selected {
        let cover = list.get(i).ok_or_else(|| {
            Error::InvalidCover(format!("{} has no cover #{i}", lattice.label(d.base)))
        })?;
        let factor = lattice.element(d.base).sub(&lattice.join_unchecked(&cover.members));
        acc = Some(match acc {
            None => factor,
            Some(a) => lattice.mul_unchecked(&a, &factor),
        });
    }
    Ok(acc.unwrap())
}

/// Everything produced by one derivation step besides the new level.
#[derive(Clone, Debug)]
pub struct Derivation {
    /// Expansion in the parent ring of every new element (zero is empty).
    pub expansions: Vec<ZLin>,
    /// All `(base, selected)` pairs with the given expansion, first one names it.
    pub provenance: Vec<Vec<DerivedElement>>,
    /// Pairs whose expansion coincided with an earlier pair.
    pub collisions: usize,
    /// The connecting map: rows index the parent `E^×`, columns the new `E′^×`.
    pub pi: IntMatrix,
}

/// Non-empty subsets of `0..n`, each sorted, in lexicographic order.
fn index_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

/// One step of the resolution: the derived Γ-semilattice, its covers and
/// the connecting map. Fails with the witness if (i)–(iii) do not hold.
pub fn derive(level: &Level) -> Result<(Level, Derivation)> {
    let report = check_conditions(&level.lattice, &level.action, &level.covers);
    if let Some((condition, witness)) = report.first_violation() {
        return Err(Error::ConditionViolated { condition, witness: witness.to_string() });
    }
    derive_unchecked(level)
}

pub(crate) fn derive_unchecked(level: &Level) -> Result<(Level, Derivation)> {
    let parent = &level.lattice;
    let covers = &level.covers;

    let mut elements: Vec<ZLin> = Vec::new();
    let mut provenance: Vec<Vec<DerivedElement>> = Vec::new();
    let mut lookup: HashMap<ZLin, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut collisions = 0;
    for e in parent.nonzero() {
        for selected in index_subsets(covers.covers(e).len()) {
            let d = DerivedElement { base: e, selected };
            let x = expand(parent, covers, &d)?;
            if x.is_zero() {
                return Err(Error::NotClosed(format!(
                    "expansion of {} is zero",
                    derived_label(parent, &d)
                )));
            }
            match lookup.get(&x) {
                Some(&i) => {
                    collisions += 1;
                    provenance[i].push(d);
                }
                None => {
                    lookup.insert(x.clone(), elements.len());
                    labels.push(derived_label(parent, &d));
                    elements.push(x);
                    provenance.push(vec![d]);
                }
            }
        }
    }
    let n = elements.len();
    let zero = n;
    let find = |x: &ZLin| -> Result<usize> {
        if x.is_zero() {
            return Ok(zero);
        }
        lookup
            .get(x)
            .copied()
            .ok_or_else(|| Error::NotClosed(parent.format_zlin(x)))
    };

    let mut table = vec![vec![zero; n + 1]; n + 1];
    for i in 0..n {
        table[i][i] = i;
        for j in i + 1..n {
            let p = find(&parent.mul_unchecked(&elements[i], &elements[j]))?;
            table[i][j] = p;
            table[j][i] = p;
        }
    }
    labels.push("0".to_string());
    let lattice = FiniteSemilattice::from_table(labels, zero, table)?;

    let action = &level.action;
    let mut tau = Vec::with_capacity(action.order());
    for g in action.elements() {
        let mut row = Vec::with_capacity(n + 1);
        for x in &elements {
            row.push(find(&action.act(g, x)?)?);
        }
        row.push(zero);
        tau.push(row);
    }
    let new_action = action.with_tau(&lattice, tau)?;

    let mut new_covers: Vec<Vec<Cover>> = vec![Vec::new(); n + 1];
    for (i, pairs) in provenance.iter().enumerate() {
        for d in pairs {
            let all = covers.covers(d.base);
            for (t, cover) in all.iter().enumerate() {
                if d.selected.contains(&t) {
                    continue;
                }
                let mut grown = d.selected.clone();
                grown.push(t);
                grown.sort_unstable();
                let top = expand(parent, covers, &DerivedElement { base: d.base, selected: grown })?;
                let mut members = vec![find(&top)?];
                for &f in &cover.members {
                    let y = parent.mul_unchecked(&parent.element(f), &elements[i]);
                    if !y.is_zero() {
                        members.push(find(&y)?);
                    }
                }
                let c = Cover::new_unchecked(i, members);
                if !new_covers[i].contains(&c) {
                    new_covers[i].push(c);
                }
            }
        }
    }

    let basis = parent.nonzero_basis();
    let columns: Vec<Vec<num_bigint::BigInt>> =
        elements.iter().map(|x| basis.iter().map(|&e| x.coefficient(e)).collect()).collect();
    let pi = IntMatrix::from_columns(basis.len(), &columns);

    let mut expansions = elements;
    expansions.push(parent.zlin_zero());
    let new_level = Level {
        lattice,
        action: new_action,
        covers: CoverSystem::from_covers_unchecked(new_covers),
    };
    Ok((new_level, Derivation { expansions, provenance, collisions, pi }))
}

fn derived_label(parent: &FiniteSemilattice, d: &DerivedElement) -> String {
    let idx: Vec<String> = d.selected.iter().map(|i| i.to_string()).collect();
    format!("{}[{}]", parent.label(d.base), idx.join(","))
}
