use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::semilattice::{FiniteSemilattice, ZLin};

/// A homomorphism from `Z[E^×]` into the functions on `m` points, given by
/// the indicator vector of every element.
#[derive(Clone, Debug)]
pub struct IndicatorMap {
    images: Vec<Vec<bool>>,
}

impl IndicatorMap {
    /// `images[e]` is the indicator of `φ(e)`; checks `φ(0) = 0` and
    /// `φ(ef) = φ(e)φ(f)`.
    pub fn new(lattice: &FiniteSemilattice, images: Vec<Vec<bool>>) -> Result<Self> {
        if images.len() != lattice.len() {
            return Err(Error::NotMultiplicative("one image per element expected".into()));
        }
        let m = images.first().map_or(0, |v| v.len());
        if images.iter().any(|v| v.len() != m) {
            return Err(Error::NotMultiplicative("images of different length".into()));
        }
        if images[lattice.zero()].iter().any(|&b| b) {
            return Err(Error::NotMultiplicative("zero maps to a nonzero function".into()));
        }
        for a in 0..lattice.len() {
            for b in 0..lattice.len() {
                let ab = lattice.product(a, b);
                if (0..m).any(|p| images[ab][p] != (images[a][p] && images[b][p])) {
                    return Err(Error::NotMultiplicative(format!(
                        "φ({}·{}) differs from φ({})·φ({})",
                        lattice.label(a),
                        lattice.label(b),
                        lattice.label(a),
                        lattice.label(b)
                    )));
                }
            }
        }
        Ok(Self { images })
    }

    pub fn points(&self) -> usize {
        self.images.first().map_or(0, |v| v.len())
    }

    pub fn image(&self, e: usize) -> &[bool] {
        &self.images[e]
    }

    /// Matrix of `φ` on the basis `E^×`: one row per point.
    pub fn matrix(&self, lattice: &FiniteSemilattice) -> IntMatrix {
        let basis = lattice.nonzero_basis();
        let mut out = IntMatrix::zeros(self.points(), basis.len());
        for (j, &e) in basis.iter().enumerate() {
            for p in 0..self.points() {
                if self.images[e][p] {
                    out[(p, j)] = 1.into();
                }
            }
        }
        out
    }
}

/// `E_φ`: every `e − ⋁J` with `J` a set of elements strictly below `e` and
/// `φ(e) = ⋁φ(J)`. The empty `J` contributes `e` itself when `φ(e) = 0`.
///
/// Enumerates all subsets of the down-set of each element, so the cost grows
/// as `2^(down-set size)`.
pub fn kernel_ideal(lattice: &FiniteSemilattice, phi: &IndicatorMap) -> Vec<ZLin> {
    let m = phi.points();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in lattice.nonzero() {
        let below = lattice.strictly_below(e);
        for mask in 0u64..(1u64 << below.len()) {
            let family: Vec<usize> =
                (0..below.len()).filter(|i| mask & (1 << i) != 0).map(|i| below[i]).collect();
            let joined: Vec<bool> =
                (0..m).map(|p| family.iter().any(|&f| phi.image(f)[p])).collect();
            if joined != phi.image(e) {
                continue;
            }
            let x = lattice.element(e).sub(&lattice.join_unchecked(&family));
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel_basis, rank, Lattice};

    fn two_point_boolean() -> (FiniteSemilattice, IndicatorMap) {
        let e = FiniteSemilattice::boolean(2);
        let images = (0..e.len())
            .map(|x| {
                let l = e.label(x);
                vec![l.contains('1'), l.contains('2')]
            })
            .collect();
        let phi = IndicatorMap::new(&e, images).unwrap();
        (e, phi)
    }

    #[test]
    fn characteristic_functions_kill_the_atom_relation() {
        let (e, phi) = two_point_boolean();
        let ker = kernel_ideal(&e, &phi);
        let top = e.index_of("{1,2}").unwrap();
        let [a, b] = ["{1}", "{2}"].map(|l| e.index_of(l).unwrap());
        let expected = e.element(top).sub(&e.join(&[a, b]).unwrap());
        assert_eq!(ker, vec![expected]);
        let gens: Vec<_> = ker.iter().map(|x| e.to_vector(x).unwrap()).collect();
        let span = Lattice::from_generators(3, &gens);
        let oracle = Lattice::from_generators(3, &kernel_basis(&phi.matrix(&e)));
        assert_eq!(span, oracle);
        assert_eq!(span.rank() + rank(&phi.matrix(&e)), 3);
    }

    #[test]
    fn injective_map_has_empty_kernel_ideal() {
        let e = FiniteSemilattice::boolean(2);
        // one point per nonzero element, φ(e)(p) = [p <= e]
        let basis = e.nonzero_basis();
        let images = (0..e.len())
            .map(|x| basis.iter().map(|&p| !e.is_zero(x) && e.leq(p, x)).collect())
            .collect();
        let phi = IndicatorMap::new(&e, images).unwrap();
        assert!(kernel_ideal(&e, &phi).is_empty());
    }

    #[test]
    fn non_multiplicative_rejected() {
        let e = FiniteSemilattice::boolean(2);
        let images = (0..e.len()).map(|x| vec![e.label(x).contains('1')]).collect::<Vec<_>>();
        assert!(IndicatorMap::new(&e, images).is_ok());
        let bad = (0..e.len()).map(|x| vec![e.label(x) == "{1}"]).collect::<Vec<_>>();
        assert!(matches!(IndicatorMap::new(&e, bad), Err(Error::NotMultiplicative(_))));
    }
}
