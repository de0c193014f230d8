use itertools::Itertools;

use super::{Mu, SharpTable};
use crate::error::{Error, Result};

/// Number of inversions `m(σ)`; `σ[a]` is the image of `a` (0-based).
pub fn inversions(sigma: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    (0..k).permutations(k).collect()
}

/// `σ(μ) = (μ_{σ(1)}|…|μ_{σ(k)})`.
pub fn apply(sigma: &[usize], mu: &Mu) -> Result<Mu> {
    if sigma.len() != mu.len() || !sigma.iter().copied().sorted().eq(0..sigma.len()) {
        return Err(Error::InvalidMu(format!("not a permutation of the parts of {mu}")));
    }
    let parts = sigma.iter().map(|&s| mu.parts()[s].clone()).collect();
    Ok(Mu::new_unchecked(mu.n(), parts))
}

/// For `μ ∈ N^n_k` and `1 <= i <= k`: the permutation `ρ` with
/// `ρ(μ_i#μ^i) ∈ N^n_{k−1}`, together with `ρ(μ_i#μ^i)`.
pub fn rho(mu: &Mu, i: usize, table: &SharpTable) -> Result<(Vec<usize>, Mu)> {
    if !mu.is_sorted_singletons() {
        return Err(Error::InvalidMu(format!("{mu} is not an increasing tuple of singletons")));
    }
    let p = mu.part(i)[0];
    let moved = table.sharp_mu(&[p], &mu.delete(i)?)?;
    let values: Vec<usize> = moved.parts().iter().map(|part| part[0]).collect();
    let order: Vec<usize> = (0..values.len()).sorted_by_key(|&a| values[a]).collect();
    if values.iter().sorted().dedup().count() != values.len() {
        return Err(Error::InvalidMu(format!("{moved} cannot be sorted into an increasing tuple")));
    }
    let sorted = apply(&order, &moved)?;
    Ok((order, sorted))
}

/// `a_0 = 0`, `a_k = a_{k−1} + k − 1`.
pub fn a_seq(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&[0, 1, 2]), 0);
        assert_eq!(inversions(&[1, 0, 2]), 1);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn a_sequence() {
        let by_recurrence: Vec<usize> = (1..=4)
            .scan(0, |a, k| {
                *a += k - 1;
                Some(*a)
            })
            .collect();
        assert_eq!(by_recurrence, vec![0, 1, 3, 6]);
        assert_eq!((1..=4).map(a_seq).collect::<Vec<_>>(), by_recurrence);
        assert_eq!(a_seq(0), 0);
    }

    #[test]
    fn apply_reorders_parts() {
        let mu = Mu::parse("1|2,3|4", 4).unwrap();
        assert_eq!(apply(&[2, 0, 1], &mu).unwrap(), Mu::parse("4|1|2,3", 4).unwrap());
        assert!(apply(&[0, 0, 1], &mu).is_err());
    }

    #[test]
    fn rho_identity_for_trivial_table() {
        let t = SharpTable::trivial(3);
        let mu = Mu::parse("1|2|3", 3).unwrap();
        let (r, sorted) = rho(&mu, 2, &t).unwrap();
        assert_eq!(r, vec![0, 1]);
        assert_eq!(inversions(&r), 0);
        assert_eq!(sorted, Mu::parse("1|3", 3).unwrap());
    }

    #[test]
    fn rho_sorts() {
        // 1#2 = 3, 1#3 = 2
        let t = SharpTable::from_rows(&[vec![0, 3, 2], vec![1, 0, 3], vec![1, 2, 0]]).unwrap();
        let mu = Mu::parse("1|2|3", 3).unwrap();
        let (r, sorted) = rho(&mu, 1, &t).unwrap();
        assert_eq!(sorted, Mu::parse("2|3", 3).unwrap());
        assert_eq!(inversions(&r), 1);
    }
}
