//! Smith normal form over the integers.
//!
//! Pivoting always picks the entry of minimal absolute value in the active
//! block, which keeps intermediate coefficients small on the sparse boundary
//! matrices produced elsewhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive; `r` is the rank.
    pub invariant_factors: Vec<BigInt>,
    /// Unimodular `U` (rows x rows) with `U * A * V = S`, when requested.
    pub left: Option<IntMatrix>,
    /// Unimodular `V` (cols x cols) with `U * A * V = S`, when requested.
    pub right: Option<IntMatrix>,
    /// The diagonal matrix `S` itself.
    pub diagonal: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Reducer {
    s: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.s.add_row_multiple(target, source, factor);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, factor);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.s.add_col_multiple(target, source, factor);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, factor);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.s.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.s[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row `t` and column `t` outside the pivot; returns false if a
    /// smaller remainder appeared and the pivot has to be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let (m, n) = self.s.shape();
        let mut clean = true;
        for i in t + 1..m {
            if self.s[(i, t)].is_zero() {
                continue;
            }
            let q = -(&self.s[(i, t)] / &self.s[(t, t)]);
            self.add_row(i, t, &q);
            if !self.s[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if self.s[(t, j)].is_zero() {
                continue;
            }
            let q = -(&self.s[(t, j)] / &self.s[(t, t)]);
            self.add_col(j, t, &q);
            if !self.s[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn min_on_cross(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.s.shape();
        let cells = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
        cells
            .filter(|&c| !self.s[c].is_zero())
            .min_by(|&a, &b| self.s[a].abs().cmp(&self.s[b].abs()))
    }

    fn run(&mut self) {
        let (m, n) = self.s.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_cross(t) {
                    if let Some((i, j)) = self.min_on_cross(t) {
                        if i != t {
                            self.swap_rows(t, i);
                        } else {
                            self.swap_cols(t, j);
                        }
                    }
                    continue;
                }
                // Enforce d_t | every remaining entry.
                let pivot = self.s[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.s[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.s[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Computes the Smith normal form of `a`, optionally with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> SmithForm {
    let (m, n) = a.shape();
    let mut r = Reducer {
        s: a.clone(),
        u: with_transforms.then(|| IntMatrix::identity(m)),
        v: with_transforms.then(|| IntMatrix::identity(n)),
    };
    r.run();
    let invariant_factors = (0..m.min(n))
        .map(|i| r.s[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithForm { invariant_factors, left: r.u, right: r.v, diagonal: r.s }
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a, false).rank()
}

/// A basis of the integer kernel `{x : A x = 0}`, one vector per entry.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a, true);
    let r = snf.rank();
    let v = snf.right.expect("transforms requested");
    (r..a.cols()).map(|j| v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows(rows);
        smith_normal_form(&m, false)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diag_two_three() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        assert!(factors(&[vec![0, 0], vec![0, 0]]).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(0, 3), false).invariant_factors.is_empty());
    }

    #[test]
    fn column_minus_two_two() {
        assert_eq!(factors(&[vec![-2], vec![2]]), vec![2]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![6, 9, 3], vec![2, 5, 7]]);
        let snf = smith_normal_form(&a, true);
        let (u, v) = (snf.left.unwrap(), snf.right.unwrap());
        assert_eq!(u.mul(&a).mul(&v), snf.diagonal);
        assert_eq!(u.determinant().abs(), BigInt::one());
        assert_eq!(v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let ker = kernel_basis(&a);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(a.mul_vec(k).iter().all(Zero::is_zero));
        }
    }
}
