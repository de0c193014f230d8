use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{FiniteSemilattice, SemilatticeId, ZLin};
use crate::error::{Error, Result};

/// A finite group acting on a finite semilattice by automorphisms fixing zero.
///
/// Group elements are indices into `labels`; `tau[g][e]` is the image of `e`
/// under `g`, and composition follows `tau_{gh} = tau_g ∘ tau_h`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    ambient: SemilatticeId,
    labels: Vec<String>,
    identity: usize,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    tau: Vec<Vec<usize>>,
}

impl GroupAction {
    /// The trivial group acting trivially.
    pub fn trivial(lattice: &FiniteSemilattice) -> Self {
        Self {
            ambient: lattice.id(),
            labels: vec!["1".to_string()],
            identity: 0,
            mul: vec![vec![0]],
            inverse: vec![0],
            tau: vec![(0..lattice.len()).collect()],
        }
    }

    /// Finite-group mode: an explicit multiplication table and action table.
    pub fn from_table(
        lattice: &FiniteSemilattice,
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
        tau: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let order = labels.len();
        let bad = |msg: String| Error::InvalidAction(msg);
        if order == 0 {
            return Err(bad("empty group".into()));
        }
        if mul.len() != order || mul.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(bad("multiplication table has wrong shape".into()));
        }
        if tau.len() != order {
            return Err(bad("action table has wrong number of group elements".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| bad("multiplication table has no identity".into()))?;
        let mut inverse = vec![0; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| bad(format!("{} has no inverse", labels[g])))?;
            for h in 0..order {
                for k in 0..order {
                    if mul[mul[g][h]][k] != mul[g][mul[h][k]] {
                        return Err(bad("multiplication is not associative".into()));
                    }
                }
            }
        }
        let action = Self { ambient: lattice.id(), labels, identity, mul, inverse, tau };
        action.check_action(lattice)?;
        Ok(action)
    }

    /// Finitely-generated mode: the group generated by the given automorphisms,
    /// with elements labelled by shortest words in the generators.
    pub fn from_generators(
        lattice: &FiniteSemilattice,
        generators: &[(String, Vec<usize>)],
    ) -> Result<Self> {
        let n = lattice.len();
        let identity_perm: Vec<usize> = (0..n).collect();
        let mut perms: Vec<Vec<usize>> = vec![identity_perm.clone()];
        let mut labels = vec!["1".to_string()];
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(identity_perm, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (name, gen) in generators {
                if gen.len() != n {
                    return Err(Error::InvalidAction(format!("generator {name} has wrong length")));
                }
                // word g·s acts as tau_g ∘ tau_s
                let p: Vec<usize> = (0..n).map(|e| perms[g][gen[e]]).collect();
                if !seen.contains_key(&p) {
                    let label = if g == 0 { name.clone() } else { format!("{}·{}", labels[g], name) };
                    seen.insert(p.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(p);
                    labels.push(label);
                }
            }
        }
        Self::from_permutations(lattice, labels, perms)
    }

    /// A faithful action given by distinct permutations closed under
    /// composition; the multiplication table is read off from composition.
    pub fn from_permutations(
        lattice: &FiniteSemilattice,
        labels: Vec<String>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = lattice.len();
        let order = perms.len();
        if labels.len() != order {
            return Err(Error::InvalidAction("label count differs from permutation count".into()));
        }
        let mut lookup: HashMap<&[usize], usize> = HashMap::new();
        for (g, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidAction(format!("{} has wrong length", labels[g])));
            }
            if lookup.insert(p.as_slice(), g).is_some() {
                return Err(Error::InvalidAction(format!(
                    "{} acts like another group element; give an explicit multiplication table",
                    labels[g]
                )));
            }
        }
        let mut mul = vec![vec![0; order]; order];
        for g in 0..order {
            for h in 0..order {
                let comp: Vec<usize> = (0..n).map(|e| perms[g][perms[h][e]]).collect();
                mul[g][h] = *lookup.get(comp.as_slice()).ok_or_else(|| {
                    Error::InvalidAction(format!(
                        "{}·{} is not among the listed group elements",
                        labels[g], labels[h]
                    ))
                })?;
            }
        }
        Self::from_table(lattice, labels, mul, perms)
    }

    /// Same group, acting on a different semilattice through `tau`.
    pub(crate) fn with_tau(&self, lattice: &FiniteSemilattice, tau: Vec<Vec<usize>>) -> Result<Self> {
        let action = Self {
            ambient: lattice.id(),
            labels: self.labels.clone(),
            identity: self.identity,
            mul: self.mul.clone(),
            inverse: self.inverse.clone(),
            tau,
        };
        action.check_action(lattice)?;
        Ok(action)
    }

    fn check_action(&self, lattice: &FiniteSemilattice) -> Result<()> {
        let n = lattice.len();
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        for (g, t) in self.tau.iter().enumerate() {
            if t.len() != n || t.iter().any(|&x| x >= n) {
                return bad(format!("τ_{} has wrong shape", self.labels[g]));
            }
            let image: BTreeSet<usize> = t.iter().copied().collect();
            if image.len() != n {
                return bad(format!("τ_{} is not a bijection", self.labels[g]));
            }
            if t[lattice.zero()] != lattice.zero() {
                return bad(format!("τ_{} moves zero", self.labels[g]));
            }
            for a in 0..n {
                for b in 0..n {
                    if t[lattice.product(a, b)] != lattice.product(t[a], t[b]) {
                        return bad(format!(
                            "τ_{} is not multiplicative at ({}, {})",
                            self.labels[g],
                            lattice.label(a),
                            lattice.label(b)
                        ));
                    }
                }
            }
        }
        if self.tau[self.identity].iter().enumerate().any(|(e, &x)| e != x) {
            return bad("identity acts nontrivially".into());
        }
        for g in 0..self.order() {
            for h in 0..self.order() {
                let gh = self.mul[g][h];
                if (0..n).any(|e| self.tau[gh][e] != self.tau[g][self.tau[h][e]]) {
                    return bad(format!(
                        "τ_{}·τ_{} differs from τ of their product",
                        self.labels[g], self.labels[h]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> SemilatticeId {
        self.ambient
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownGroupElement(label.to_string()))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn tau(&self) -> &[Vec<usize>] {
        &self.tau
    }

    pub fn act_element(&self, g: usize, e: usize) -> usize {
        self.tau[g][e]
    }

    /// Applies `τ_g` to every term of `x`.
    pub fn act(&self, g: usize, x: &ZLin) -> Result<ZLin> {
        if g >= self.order() {
            return Err(Error::UnknownGroupElement(format!("#{g}")));
        }
        if x.ambient() != self.ambient {
            return Err(Error::MismatchedAmbient);
        }
        Ok(x.map_elements(self.ambient, |e| self.tau[g][e]))
    }

    pub fn stabilizer(&self, e: usize) -> BTreeSet<usize> {
        self.elements().filter(|&g| self.tau[g][e] == e).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut group = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(g) = frontier.pop() {
            for &s in &gens {
                let h = self.mul[g][s];
                if group.insert(h) {
                    frontier.push(h);
                }
            }
        }
        group
    }

    /// Free on `E^×`: only the identity fixes a nonzero element.
    pub fn is_free(&self, lattice: &FiniteSemilattice) -> bool {
        lattice.nonzero().all(|e| self.stabilizer(e).len() == 1)
    }

    pub fn is_trivial(&self) -> bool {
        self.tau.iter().all(|t| t.iter().enumerate().all(|(e, &x)| e == x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_atoms() -> (FiniteSemilattice, GroupAction) {
        let e = FiniteSemilattice::boolean(2);
        let [a, b, top] = ["{1}", "{2}", "{1,2}"].map(|l| e.index_of(l).unwrap());
        let mut perm: Vec<usize> = (0..e.len()).collect();
        perm[a] = b;
        perm[b] = a;
        perm[top] = top;
        let act = GroupAction::from_generators(&e, &[("s".to_string(), perm)]).unwrap();
        (e, act)
    }

    #[test]
    fn generated_group_has_order_two() {
        let (e, act) = swap_atoms();
        assert_eq!(act.order(), 2);
        let s = act.index_of("s").unwrap();
        assert_eq!(act.mul(s, s), act.identity());
        let top = e.index_of("{1,2}").unwrap();
        assert_eq!(act.stabilizer(top).len(), 2);
        assert!(!act.is_free(&e));
    }

    #[test]
    fn act_is_linear_and_invertible() {
        let (e, act) = swap_atoms();
        let [a, b] = ["{1}", "{2}"].map(|l| e.index_of(l).unwrap());
        let s = act.index_of("s").unwrap();
        let x = e.element(a).add(&e.element(b).scale(&3.into()));
        let y = act.act(s, &x).unwrap();
        assert_eq!(y, e.element(b).add(&e.element(a).scale(&3.into())));
        assert_eq!(act.act(act.inverse(s), &y).unwrap(), x);
        assert_eq!(act.act(act.identity(), &x).unwrap(), x);
        assert!(matches!(act.act(7, &x), Err(Error::UnknownGroupElement(_))));
    }

    #[test]
    fn rejects_non_automorphism() {
        let e = FiniteSemilattice::boolean(2);
        let [a, top] = ["{1}", "{1,2}"].map(|l| e.index_of(l).unwrap());
        let mut perm: Vec<usize> = (0..e.len()).collect();
        perm[a] = top;
        perm[top] = a;
        let err = GroupAction::from_generators(&e, &[("t".to_string(), perm)]);
        assert!(matches!(err, Err(Error::InvalidAction(_))));
    }
}
