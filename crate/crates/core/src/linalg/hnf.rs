//! Row-style Hermite normal form and sublattices of `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Hermite normal form of the row span of `a`: zero rows dropped, pivots
/// strictly increasing and positive, entries above a pivot reduced into
/// `[0, pivot)`. Two generating sets span the same lattice iff their forms agree.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let pivot = (row..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            let mut clean = true;
            for i in row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, col)] / &h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                if !h[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
        }
        let p = h[(row, col)].clone();
        for i in 0..row {
            let q = h[(i, col)].div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, row, &-q);
            }
        }
        row += 1;
    }
    let data = h.data()[..row * n].to_vec();
    IntMatrix::from_row_major(row, n, data)
}

/// A sublattice of `Z^dim`, stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(generators.len(), dim);
        for (i, g) in generators.iter().enumerate() {
            assert_eq!(g.len(), dim, "generator has wrong length");
            for (j, v) in g.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Self { dim, basis: hermite_normal_form(&m) }
    }

    /// The lattice spanned by the columns of `a`.
    pub fn column_span(a: &IntMatrix) -> Self {
        let t = a.transpose();
        Self { dim: a.rows(), basis: hermite_normal_form(&t) }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: IntMatrix::zeros(0, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for i in 0..self.basis.rows() {
            let row = self.basis.row(i);
            let col = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
            let (q, r) = w[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (wj, bj) in w.iter_mut().zip(row) {
                *wj -= &q * bj;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Some generator of `self` not contained in `other`, if any.
    pub fn first_not_in(&self, other: &Lattice) -> Option<Vec<BigInt>> {
        (0..self.basis.rows())
            .map(|i| self.basis.row(i).to_vec())
            .find(|r| !other.contains(r))
    }
}
