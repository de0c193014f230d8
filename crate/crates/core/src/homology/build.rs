use std::collections::HashMap;

use num_bigint::BigInt;

use super::complex::ChainComplex;
use super::model::OrbitModel;
use crate::error::Result;
use crate::linalg::IntMatrix;
use crate::mu::{a_seq, apply, enumerate_n, enumerate_q, inversions, permutations, rho, Mu};

/// Basis of a degree: the pairs `(orbit, μ)`, `μ`-major.
struct Basis {
    mus: Vec<Mu>,
    index: HashMap<Mu, usize>,
    b: usize,
}

impl Basis {
    fn new(mus: Vec<Mu>, b: usize) -> Self {
        let index = mus.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { mus, index, b }
    }

    fn dim(&self) -> usize {
        self.mus.len() * self.b
    }

    fn offset(&self, mu: &Mu) -> usize {
        self.index[mu] * self.b
    }

    fn labels(&self, orbits: &[String]) -> Vec<String> {
        self.mus.iter().flat_map(|m| orbits.iter().map(move |o| format!("[{o}]({m})"))).collect()
    }
}

fn sign(exp: usize) -> BigInt {
    if exp % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) }
}

/// Subsets of a sorted slice, as sorted vectors.
fn subsets(set: &[usize]) -> Vec<Vec<usize>> {
    (0u32..(1 << set.len()))
        .map(|mask| set.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &p)| p).collect())
        .collect()
}

fn minus(set: &[usize], remove: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|p| !remove.contains(p)).collect()
}

/// All tuples obtained from `head` by adding each element of `rho` to one of
/// the parts `1..=parts`.
fn distribute(head: &Mu, rho: &[usize], parts: usize) -> Result<Vec<Mu>> {
    let mut out = vec![head.clone()];
    for &p in rho {
        let mut next = Vec::with_capacity(out.len() * parts);
        for nu in &out {
            for i in 1..=parts {
                next.push(nu.enlarge(i, &[p])?);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The complex `C` on `(orbit, μ)` with `μ ∈ Q^n_k`, degrees `0..=min(up_to, n)`.
pub fn build_c(model: &OrbitModel, up_to: usize) -> Result<ChainComplex> {
    let n = model.n();
    let b = model.basis_size();
    let top = up_to.min(n);
    let bases: Vec<Basis> = (0..=top).map(|k| Basis::new(enumerate_q(n, k), b)).collect();
    let sharp = model.sharp();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let (src, dst) = (&bases[k], &bases[k - 1]);
        let mut d = IntMatrix::zeros(dst.dim(), src.dim());
        for mu in &src.mus {
            let col = src.offset(mu);
            let last = mu.part(k);
            if k == 1 {
                for omega in subsets(last) {
                    let block = model.m_omega(&omega)?.scale(&sign(omega.len()));
                    d.add_block(0, col, &block);
                }
                continue;
            }
            let head = mu.delete(k)?;
            for omega in subsets(last) {
                let target = sharp.sharp_mu(&omega, &head)?;
                let block = model.m_omega(&omega)?.scale(&sign(omega.len()));
                d.add_block(dst.offset(&target), col, &block);
            }
            // every element of ρ moves into some earlier part, independently
            for rho_set in subsets(last).into_iter().filter(|r| !r.is_empty()) {
                let spread = distribute(&head, &rho_set, k - 1)?;
                for omega in subsets(&minus(last, &rho_set)) {
                    let block = model.m_omega(&omega)?.scale(&sign(rho_set.len() + omega.len()));
                    for nu in &spread {
                        let target = sharp.sharp_mu(&omega, nu)?;
                        d.add_block(dst.offset(&target), col, &block);
                    }
                }
            }
        }
        boundaries.push(d);
    }
    let labels = bases.iter().map(|x| x.labels(model.orbits())).collect();
    ChainComplex::new(labels, boundaries)
}

/// The complex `C̃` on `(orbit, μ)` with `μ ∈ N^n_k`, degrees `0..=n`.
pub fn build_ctilde(model: &OrbitModel) -> Result<ChainComplex> {
    let n = model.n();
    let b = model.basis_size();
    let bases: Vec<Basis> = (0..=n).map(|k| Basis::new(enumerate_n(n, k), b)).collect();
    let identity = IntMatrix::identity(b);
    let mut boundaries = Vec::with_capacity(n);
    for k in 1..=n {
        let (src, dst) = (&bases[k], &bases[k - 1]);
        let mut d = IntMatrix::zeros(dst.dim(), src.dim());
        for mu in &src.mus {
            let col = src.offset(mu);
            for i in 1..=k {
                let outer = sign(i + 1);
                d.add_block(dst.offset(&mu.delete(i)?), col, &identity.scale(&outer));
                let (perm, target) = rho(mu, i, model.sharp())?;
                let inner = -sign(inversions(&perm));
                let block = model.m(mu.part(i)[0]).scale(&(outer * inner));
                d.add_block(dst.offset(&target), col, &block);
            }
        }
        boundaries.push(d);
    }
    let labels = bases.iter().map(|x| x.labels(model.orbits())).collect();
    ChainComplex::new(labels, boundaries)
}

/// `f_k: C̃_k → C_k`, `x_μ ↦ Σ_σ (−1)^{m(σ)+a_k} x(σ(μ))`; `f_0` is the identity.
pub fn chain_map_f(model: &OrbitModel, k: usize) -> Result<IntMatrix> {
    let n = model.n();
    let b = model.basis_size();
    let src = Basis::new(enumerate_n(n, k), b);
    let dst = Basis::new(enumerate_q(n, k), b);
    let identity = IntMatrix::identity(b);
    let mut f = IntMatrix::zeros(dst.dim(), src.dim());
    let perms = permutations(k);
    for mu in &src.mus {
        for sigma in &perms {
            let s = sign(inversions(sigma) + a_seq(k));
            f.add_block(dst.offset(&apply(sigma, mu)?), src.offset(mu), &identity.scale(&s));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyGroup;
    use crate::mu::SharpTable;
    use num_traits::Zero;

    fn flip() -> OrbitModel {
        OrbitModel::single_orbit(SharpTable::from_rows(&[vec![0, 2], vec![1, 0]]).unwrap()).unwrap()
    }

    fn square() -> OrbitModel {
        OrbitModel::single_orbit(SharpTable::from_rows(&[vec![0, 1], vec![2, 0]]).unwrap()).unwrap()
    }

    #[test]
    fn n_one_boundary() {
        let model = OrbitModel::single_orbit(SharpTable::trivial(1)).unwrap();
        let c = build_c(&model, 5).unwrap();
        assert_eq!(c.ranks(), vec![1, 1]);
        assert!(c.boundary(1).is_zero());
        let m = IntMatrix::from_rows(&[vec![3]]);
        let model = OrbitModel::new(vec!["x".into()], vec![m.clone()], SharpTable::trivial(1)).unwrap();
        let c = build_c(&model, 1).unwrap();
        assert_eq!(c.boundary(1), IntMatrix::identity(1).sub(&m));
    }

    #[test]
    fn flip_gives_torus_homology() {
        let model = flip();
        let ct = build_ctilde(&model).unwrap();
        assert!(ct.boundary(2).is_zero());
        let expected = vec![HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)];
        assert_eq!(ct.homology_all(), expected);
        // in C both 1|2 and 2|1 map to −x(1,2)
        let c = build_c(&model, 2).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![0, 0], vec![-1, -1], vec![0, 0]]);
        assert_eq!(c.boundary(2), d2);
        assert_eq!(c.homology_all(), expected);
    }

    #[test]
    fn square_relation_ctilde() {
        let model = square();
        let ct = build_ctilde(&model).unwrap();
        assert!(ct.boundary(1).is_zero());
        assert_eq!(ct.boundary(2), IntMatrix::from_rows(&[vec![-2], vec![2]]));
        let h = ct.homology_all();
        assert_eq!(h[1], HomologyGroup::new(1, vec![2.into()]));
        assert_eq!(h[2], HomologyGroup::zero());
    }

    #[test]
    fn ctilde_ranks_are_binomial() {
        let model = OrbitModel::single_orbit(SharpTable::trivial(4)).unwrap();
        assert_eq!(build_ctilde(&model).unwrap().ranks(), vec![1, 4, 6, 4, 1]);
        assert_eq!(build_c(&model, 4).unwrap().ranks(), vec![1, 15, 50, 60, 24]);
    }

    #[test]
    fn split_last_part_spreads_over_earlier_parts() {
        // free abelian on four generators: ∂_3 x(1|2|3,4) hits every way of
        // sending 3 and 4 into the first two parts
        let model = OrbitModel::single_orbit(SharpTable::trivial(4)).unwrap();
        let c = build_c(&model, 4).unwrap();
        assert_eq!(c.square_violation(), None);
        let src = c.labels(3).iter().position(|l| l == "[P](1|2|3,4)").unwrap();
        let col = c.boundary(3).column(src);
        let hit: Vec<&str> = c
            .labels(2)
            .iter()
            .zip(&col)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, _)| l.as_str())
            .collect();
        assert_eq!(hit, vec!["[P](1|2,3,4)", "[P](1,3|2,4)", "[P](1,3,4|2)", "[P](1,4|2,3)"]);
        assert!(col.iter().all(|v| v.is_zero() || *v == BigInt::from(1)));
    }

    #[test]
    fn f_in_low_degrees() {
        let model = square();
        assert_eq!(chain_map_f(&model, 0).unwrap(), IntMatrix::identity(1));
        let f1 = chain_map_f(&model, 1).unwrap();
        // N^2_1 = {1, 2} sits inside Q^2_1 = {1, 1,2, 2}
        assert_eq!(f1, IntMatrix::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1]]));
    }

    #[test]
    fn chain_map_identity_for_examples() {
        for model in [flip(), square(), OrbitModel::single_orbit(SharpTable::trivial(3)).unwrap()] {
            let c = build_c(&model, model.n()).unwrap();
            let ct = build_ctilde(&model).unwrap();
            assert_eq!(c.square_violation(), None);
            assert_eq!(ct.square_violation(), None);
            for k in 1..=model.n() {
                let lhs = c.boundary(k).mul(&chain_map_f(&model, k).unwrap());
                let rhs = chain_map_f(&model, k - 1).unwrap().mul(&ct.boundary(k));
                assert_eq!(lhs, rhs, "degree {k}");
            }
        }
    }
}
