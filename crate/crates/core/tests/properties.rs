use indres::homology::{build_c, build_ctilde, chain_map_violation, ChainComplex};
use indres::linalg::{smith_normal_form, IntMatrix};
use indres::mu::{enumerate_n, enumerate_q, Mu, SharpTable};
use indres::presentation::{
    census, equal_in_monoid, lcm, right_reverse, Reversal, SigmaMap, SignedWord,
};
use indres::random::{self, valid_sharp_tables};
use indres::resolution::build_tower;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::Rng;

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// A random unimodular matrix and its inverse, built from elementary moves.
fn unimodular(rng: &mut random::InstanceRng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u.negate_row(0);
            inv.negate_col(0);
        }
        return (u, inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        match rng.gen_range(0..3) {
            0 => {
                let c = int(rng.gen_range(-2..=2));
                // E adds c·row j to row i; E⁻¹ subtracts it
                u.add_row_multiple(i, j, &c);
                inv.add_col_multiple(j, i, &-c);
            }
            1 => {
                u.swap_rows(i, j);
                inv.swap_cols(i, j);
            }
            _ => {
                u.negate_row(i);
                inv.negate_col(i);
            }
        }
    }
    (u, inv)
}

fn random_matrix(rng: &mut random::InstanceRng, rows: usize, cols: usize) -> IntMatrix {
    let data = (0..rows * cols).map(|_| int(rng.gen_range(-4..=4))).collect();
    IntMatrix::from_row_major(rows, cols, data)
}

fn sharp_tables() -> Vec<SharpTable> {
    let mut tables: Vec<SharpTable> = (1..=4).flat_map(|n| valid_sharp_tables(n).iter().cloned()).collect();
    tables.push(SharpTable::trivial(5));
    tables
}

fn valid_sigmas() -> Vec<SigmaMap> {
    census(&[1, 2, 3]).unwrap().into_iter().flat_map(|r| r.classes.into_iter().map(|c| c.sigma)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_commutative(n in 1usize..=5, k1 in 0usize..=3, k2 in 0usize..=3, a in any::<Index>(), b in any::<Index>()) {
        let (qa, qb) = (enumerate_q(n, k1), enumerate_q(n, k2));
        prop_assume!(!qa.is_empty() && !qb.is_empty());
        let (mu, nu) = (a.get(&qa), b.get(&qb));
        prop_assert_eq!(mu.star(nu), nu.star(mu));
    }

    #[test]
    fn mu_text_round_trips(n in 1usize..=5, k in 1usize..=3, a in any::<Index>()) {
        let all = enumerate_q(n, k);
        prop_assume!(!all.is_empty());
        let mu = a.get(&all);
        prop_assert_eq!(&Mu::parse(&mu.to_string(), n).unwrap(), mu);
    }

    #[test]
    fn sharp_ignores_extraction_order(t in any::<Index>(), mask in 0u32..32, j in any::<Index>()) {
        let tables = sharp_tables();
        let table = t.get(&tables);
        let n = table.n();
        let omega: Vec<usize> = (1..=n).filter(|&p| mask >> (p - 1) & 1 == 1).collect();
        let rest: Vec<usize> = (1..=n).filter(|p| !omega.contains(p)).collect();
        prop_assume!(!rest.is_empty() && omega.len() <= 4);
        let j = *j.get(&rest);
        let all = table.sharp_all_orders(&omega, j).unwrap();
        prop_assert_eq!(all.len(), 1);
        prop_assert_eq!(*all.iter().next().unwrap(), table.sharp(&omega, j).unwrap());
    }

    #[test]
    fn boundaries_square_to_zero_and_f_is_a_chain_map(seed in any::<u64>(), n in 1usize..=4) {
        let model = random::random_orbit_model(&mut random::rng(seed), n);
        let c = build_c(&model, n).unwrap();
        let ct = build_ctilde(&model).unwrap();
        prop_assert_eq!(c.square_violation(), None);
        prop_assert_eq!(ct.square_violation(), None);
        prop_assert_eq!(chain_map_violation(&model, &c, &ct).unwrap(), None);
    }

    #[test]
    fn euler_characteristic_matches_homology(seed in any::<u64>(), n in 1usize..=4) {
        let model = random::random_orbit_model(&mut random::rng(seed), n);
        for complex in [build_ctilde(&model).unwrap(), build_c(&model, n).unwrap()] {
            let from_ranks: i64 = complex.ranks().iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
            let from_homology: i64 = complex.homology_all().iter().enumerate()
                .map(|(k, h)| if k % 2 == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) }).sum();
            prop_assert_eq!(complex.euler_characteristic(), from_ranks);
            prop_assert_eq!(from_ranks, from_homology);
        }
    }

    #[test]
    fn homology_survives_unimodular_basis_change(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = random::rng(seed);
        let model = random::random_orbit_model(&mut rng, n);
        let ct = build_ctilde(&model).unwrap();
        let changes: Vec<(IntMatrix, IntMatrix)> = (0..=ct.top()).map(|k| unimodular(&mut rng, ct.rank(k))).collect();
        for (u, inv) in &changes {
            prop_assert_eq!(u.mul(inv), IntMatrix::identity(u.rows()));
        }
        let boundaries = (1..=ct.top()).map(|k| changes[k - 1].0.mul(&ct.boundary(k)).mul(&changes[k].1)).collect();
        let labels = (0..=ct.top()).map(|k| ct.labels(k).to_vec()).collect();
        let moved = ChainComplex::new(labels, boundaries).unwrap();
        prop_assert_eq!(moved.square_violation(), None);
        prop_assert_eq!(moved.homology_all(), ct.homology_all());
        prop_assert_eq!(moved.cohomology_all(), ct.cohomology_all());
    }

    #[test]
    fn smith_transforms_are_exact(seed in any::<u64>(), rows in 0usize..6, cols in 0usize..6) {
        let a = random_matrix(&mut random::rng(seed), rows, cols);
        let snf = smith_normal_form(&a, true);
        let (u, v) = (snf.left.clone().unwrap(), snf.right.clone().unwrap());
        prop_assert_eq!(u.mul(&a).mul(&v), snf.diagonal.clone());
        prop_assert!(u.determinant().abs().is_one());
        prop_assert!(v.determinant().abs().is_one());
        for (i, d) in snf.invariant_factors.iter().enumerate() {
            prop_assert!(d.is_positive());
            if let Some(next) = snf.invariant_factors.get(i + 1) {
                prop_assert!((next % d).is_zero());
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(snf.diagonal[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn lcm_is_symmetric_and_a_common_multiple(s in any::<Index>(), p in prop::collection::vec(0usize..3, 0..4), q in prop::collection::vec(0usize..3, 0..4)) {
        let sigmas = valid_sigmas();
        let s = s.get(&sigmas);
        let k = s.size();
        let p: Vec<usize> = p.into_iter().map(|x| x % k).collect();
        let q: Vec<usize> = q.into_iter().map(|x| x % k).collect();
        let z = lcm(&p, &q, s, None).unwrap();
        let w = lcm(&q, &p, s, None).unwrap();
        prop_assert!(equal_in_monoid(&z, &w, s, 10_000).unwrap());
        for d in [&p, &q] {
            // d left-divides z: d⁻¹z reverses to a positive word
            let probe = SignedWord::negative(d).concat(&SignedWord::positive(&z));
            let Reversal::Done(r) = right_reverse(&probe, s, 10_000) else { panic!("budget") };
            prop_assert!(r.is_positive());
        }
    }

    #[test]
    fn reversing_keeps_the_exponent_sum(s in any::<Index>(), letters in prop::collection::vec((0usize..3, any::<bool>()), 0..8)) {
        let sigmas = valid_sigmas();
        let s = s.get(&sigmas);
        let w = SignedWord { letters: letters.into_iter().map(|(g, positive)| indres::presentation::Letter { generator: g % s.size(), positive }).collect() };
        let sum = |w: &SignedWord| w.letters.iter().map(|l| if l.positive { 1i64 } else { -1 }).sum::<i64>();
        let Reversal::Done(r) = right_reverse(&w, s, 10_000) else { panic!("budget") };
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!((w.len() - r.len()) % 2, 0);
        prop_assert_eq!(sum(&r), sum(&w));
        prop_assert!(r.split_fraction().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_operations(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let level = random::random_gamma_instance(&mut rng);
        let (e, action) = (&level.lattice, &level.action);
        let basis = e.nonzero_basis();
        let sample = |rng: &mut random::InstanceRng| {
            e.zlin(basis.iter().map(|&x| (x, int(rng.gen_range(-2..=2))))).unwrap()
        };
        let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        prop_assert_eq!(e.mul(&x, &y).unwrap(), e.mul(&y, &x).unwrap());
        prop_assert_eq!(e.mul(&e.mul(&x, &y).unwrap(), &z).unwrap(), e.mul(&x, &e.mul(&y, &z).unwrap()).unwrap());
        for g in action.elements() {
            let lhs = action.act(g, &e.mul(&x, &y).unwrap()).unwrap();
            let rhs = e.mul(&action.act(g, &x).unwrap(), &action.act(g, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let subset: Vec<usize> = basis.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        if !subset.is_empty() {
            let j = e.join(&subset).unwrap();
            prop_assert!(e.is_idempotent(&j).unwrap());
            for &s in &subset {
                prop_assert_eq!(e.mul(&j, &e.element(s)).unwrap(), e.element(s));
            }
        }
    }

    #[test]
    fn derived_expansions_are_closed_under_products(seed in any::<u64>()) {
        let level = random::random_instance(&mut random::rng(seed));
        let tower = build_tower(level, 8).unwrap();
        for (k, der) in tower.derivations.iter().enumerate() {
            let (parent, child) = (&tower.levels[k].lattice, &tower.levels[k + 1].lattice);
            for x in child.nonzero() {
                for y in child.nonzero() {
                    let prod = parent.mul(&der.expansions[x], &der.expansions[y]).unwrap();
                    let xy = child.product(x, y);
                    if child.is_zero(xy) {
                        prop_assert!(prod.is_zero());
                    } else {
                        prop_assert_eq!(&prod, &der.expansions[xy]);
                    }
                }
            }
        }
    }
}

#[test]
fn sorted_singleton_tuples_lie_in_the_general_family() {
    for n in 1..=5 {
        for k in 0..=n {
            let q = enumerate_q(n, k);
            for mu in enumerate_n(n, k) {
                assert!(mu.is_sorted_singletons());
                assert!(q.contains(&mu), "{mu}");
            }
        }
    }
}
