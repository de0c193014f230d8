//! Seeded generators for valid `#` tables, orbit models and finite
//! Γ-semilattices with condition-passing cover systems.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homology::OrbitModel;
use crate::linalg::IntMatrix;
use crate::mu::SharpTable;
use crate::resolution::{check_conditions, CoverSystem, Level};
use crate::semilattice::{FiniteSemilattice, GroupAction};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest `n` for which every valid `#` table is enumerated.
pub const MAX_SHARP_N: usize = 4;

/// Largest `|E|`, zero included.
pub const MAX_ELEMENTS: usize = 12;

/// Largest group order for Γ-instances.
pub const MAX_GROUP_ORDER: usize = 6;

/// All valid `#` tables on `n ≤ 4` indices, in enumeration order.
pub fn valid_sharp_tables(n: usize) -> &'static [SharpTable] {
    static CACHE: OnceLock<Vec<Vec<SharpTable>>> = OnceLock::new();
    assert!(n <= MAX_SHARP_N, "sharp tables are enumerated for n ≤ {MAX_SHARP_N}");
    &CACHE.get_or_init(|| (0..=MAX_SHARP_N).map(enumerate_sharp_tables).collect())[n]
}

fn enumerate_sharp_tables(n: usize) -> Vec<SharpTable> {
    if n == 0 {
        return vec![SharpTable::partial(0)];
    }
    // each row is an injective map {j ≠ i} → {1..n}
    let rows: Vec<Vec<usize>> = (1..=n).permutations(n - 1).collect();
    (0..n)
        .map(|_| rows.iter())
        .multi_cartesian_product()
        .filter_map(|choice| {
            let table = SharpTable::from_fn(n, |i, j| {
                let k = if j < i { j - 1 } else { j - 2 };
                choice[i - 1][k]
            })
            .ok()?;
            table.validate().ok().map(|_| table)
        })
        .collect()
}

pub fn random_sharp_table(rng: &mut InstanceRng, n: usize) -> SharpTable {
    valid_sharp_tables(n).choose(rng).expect("the trivial table is valid").clone()
}

/// An orbit model on `n` indices: a random valid `#` table, one to three
/// orbits and `M_i = A^{c_i} B^{d_i}` for a random integer `A`, `B = A + tI`
/// and exponents `c, d ∈ {0,1}^n` with `c_{p#q} + c_p = c_{q#p} + c_q`.
pub fn random_orbit_model(rng: &mut InstanceRng, n: usize) -> OrbitModel {
    let sharp = random_sharp_table(rng, n);
    let b = rng.gen_range(1..=3);
    let orbits: Vec<String> = (1..=b).map(|i| format!("o{i}")).collect();
    let exponents: Vec<Vec<u32>> = (0..1u32 << n)
        .map(|mask| (0..n).map(|i| mask >> i & 1).collect::<Vec<u32>>())
        .filter(|c| {
            (1..=n).all(|p| {
                (1..=n).filter(|&q| q != p).all(|q| {
                    let pq = sharp.get(p, q).unwrap();
                    let qp = sharp.get(q, p).unwrap();
                    c[pq - 1] + c[p - 1] == c[qp - 1] + c[q - 1]
                })
            })
        })
        .collect();
    for _ in 0..20 {
        let a = IntMatrix::from_rows(
            &(0..b).map(|_| (0..b).map(|_| rng.gen_range(-2i64..=2)).collect()).collect::<Vec<Vec<i64>>>(),
        );
        let t = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let bm = a.add(&IntMatrix::identity(b).scale(&BigInt::from(t)));
        let c = exponents.choose(rng).unwrap();
        let d = exponents.choose(rng).unwrap();
        let m: Vec<IntMatrix> = (0..n)
            .map(|i| {
                let mut x = IntMatrix::identity(b);
                if c[i] == 1 {
                    x = x.mul(&a);
                }
                if d[i] == 1 {
                    x = x.mul(&bm);
                }
                x
            })
            .collect();
        if let Ok(model) = OrbitModel::new(orbits.clone(), m, sharp.clone()) {
            return model;
        }
    }
    OrbitModel::new(orbits, vec![IntMatrix::identity(b); n], sharp).expect("identity matrices factor")
}

/// A random instance without group action.
pub fn random_instance(rng: &mut InstanceRng) -> Level {
    loop {
        let points = rng.gen_range(3..=4);
        let family = random_family(rng, points, &[(0..points).collect::<Vec<usize>>()]);
        let Some(family) = family else { continue };
        let lattice = FiniteSemilattice::from_sets(&family).expect("closed family");
        let action = GroupAction::trivial(&lattice);
        if let Some(level) = add_covers(rng, lattice, action) {
            return level;
        }
    }
}

/// A random Γ-instance with `|Γ| ≤ 6`; Γ permutes the ground points and acts
/// faithfully on the family.
pub fn random_gamma_instance(rng: &mut InstanceRng) -> Level {
    loop {
        let points = rng.gen_range(3..=4);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let mut p: Vec<usize> = (0..points).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let group = close_group(points, &gens);
        if group.len() > MAX_GROUP_ORDER {
            continue;
        }
        let Some(family) = random_family(rng, points, &group) else { continue };
        let lattice = FiniteSemilattice::from_sets(&family).expect("closed family");
        let index = |s: &BTreeSet<usize>| lattice.index_of(&set_name(s)).expect("family member");
        let sets: Vec<BTreeSet<usize>> = lattice.labels().iter().map(|l| parse_set(l)).collect();
        let perms: Vec<Vec<usize>> = group
            .iter()
            .map(|g| sets.iter().map(|s| index(&s.iter().map(|&x| g[x]).collect())).collect())
            .collect();
        let labels: Vec<String> = group.iter().map(|g| cycle_name(g)).collect();
        let Ok(action) = GroupAction::from_permutations(&lattice, labels, perms) else { continue };
        if let Some(level) = add_covers(rng, lattice, action) {
            return level;
        }
    }
}

fn close_group(points: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..points).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh: Vec<usize> = (0..points).map(|x| h[g[x]]).collect();
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
        if seen.len() > MAX_GROUP_ORDER {
            break;
        }
    }
    seen.into_iter().collect()
}

/// Ground points 1-based in labels.
fn set_name(s: &BTreeSet<usize>) -> String {
    if s.is_empty() {
        return "0".into();
    }
    format!("{{{}}}", s.iter().map(|x| (x + 1).to_string()).join(","))
}

fn parse_set(label: &str) -> BTreeSet<usize> {
    if label == "0" {
        return BTreeSet::new();
    }
    label
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().expect("numeric label") - 1)
        .collect()
}

fn cycle_name(g: &[usize]) -> String {
    let mut seen = vec![false; g.len()];
    let mut out = String::new();
    for start in 0..g.len() {
        if seen[start] || g[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = g[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Singletons, the whole ground set and a few random subsets, closed under
/// `group` and under nonempty intersection. `None` when it gets too large.
/// Sets are 1-based to match the labels of `FiniteSemilattice::from_sets`.
fn random_family(rng: &mut InstanceRng, points: usize, group: &[Vec<usize>]) -> Option<Vec<BTreeSet<usize>>> {
    let mut family: BTreeSet<BTreeSet<usize>> = (0..points).map(|x| BTreeSet::from([x])).collect();
    family.insert((0..points).collect());
    if points == 4 && rng.gen_bool(0.5) {
        // two of the three pairings of the points; the top then has two covers
        // with pairwise disjoint supports
        let pairings = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];
        let skip = rng.gen_range(0..3);
        for (i, pairing) in pairings.iter().enumerate() {
            if i != skip {
                family.extend(pairing.iter().map(|b| b.iter().copied().collect::<BTreeSet<usize>>()));
            }
        }
    } else {
        for _ in 0..rng.gen_range(1..=3) {
            let size = rng.gen_range(2..points);
            let mut pts: Vec<usize> = (0..points).collect();
            pts.shuffle(rng);
            family.insert(pts[..size].iter().copied().collect());
        }
    }
    loop {
        let mut next = family.clone();
        for s in &family {
            for g in group {
                next.insert(s.iter().map(|&x| g[x]).collect());
            }
            for t in &family {
                let meet: BTreeSet<usize> = s.intersection(t).copied().collect();
                if !meet.is_empty() {
                    next.insert(meet);
                }
            }
        }
        if next.len() >= MAX_ELEMENTS {
            return None;
        }
        if next == family {
            break;
        }
        family = next;
    }
    Some(family.into_iter().map(|s| s.into_iter().map(|x| x + 1).collect()).collect())
}

/// Adds covers bottom-up, each together with its Γ-orbit and all its
/// restrictions, keeping it only when conditions (i)–(iii) still hold.
fn add_covers(
    rng: &mut InstanceRng,
    lattice: FiniteSemilattice,
    action: GroupAction,
) -> Option<Level> {
    let mut elements: Vec<usize> = lattice.nonzero().collect();
    elements.sort_by_key(|&e| (lattice.strictly_below(e).len(), e));
    let mut lists: Vec<Vec<Vec<usize>>> = vec![Vec::new(); lattice.len()];
    for &e in &elements {
        let mut candidates = candidate_covers(&lattice, e);
        candidates.shuffle(rng);
        let maximal = lattice.nonzero().all(|f| !lattice.lt(e, f));
        if maximal || rng.gen_bool(0.5) {
            let minimal = |x: usize| lattice.strictly_below(x).iter().all(|&y| lattice.is_zero(y));
            candidates.sort_by_key(|c| (c.iter().filter(|&&x| minimal(x)).count(), c.len()));
        }
        let wanted = if maximal { 2 } else { rng.gen_range(0..=2) };
        let mut added = 0;
        for cand in candidates {
            if added == wanted {
                break;
            }
            let Some(next) = close_covers(&lattice, &action, &lists, e, cand) else { continue };
            let Ok(system) = CoverSystem::new(&lattice, next.clone()) else { continue };
            if system.max_covers() > 3 || !check_conditions(&lattice, &action, &system).passes() {
                continue;
            }
            lists = next;
            added += 1;
        }
    }
    let covers = CoverSystem::new(&lattice, lists).ok()?;
    if covers.is_empty() {
        return None;
    }
    Level::new(lattice, action, covers).ok()
}

/// Sets of two or three elements strictly below `e` that cover `e`.
fn candidate_covers(lattice: &FiniteSemilattice, e: usize) -> Vec<Vec<usize>> {
    let below = lattice.strictly_below(e);
    (2..=3)
        .flat_map(|k| below.iter().copied().combinations(k))
        .filter(|c| crate::resolution::is_finite_cover(lattice, e, c).unwrap_or(false))
        .collect()
}

/// `lists` plus `cover ∈ ℛ(e)`, its translates and restrictions.
fn close_covers(
    lattice: &FiniteSemilattice,
    action: &GroupAction,
    lists: &[Vec<Vec<usize>>],
    e: usize,
    cover: Vec<usize>,
) -> Option<Vec<Vec<Vec<usize>>>> {
    let mut out = lists.to_vec();
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut queue = VecDeque::from([(e, cover)]);
    while let Some((base, mut members)) = queue.pop_front() {
        members.sort_unstable();
        members.dedup();
        if !seen.insert((base, members.clone())) {
            continue;
        }
        if !out[base].contains(&members) {
            out[base].push(members.clone());
            if out[base].len() > 3 {
                return None;
            }
        }
        for g in action.elements() {
            let moved = members.iter().map(|&m| action.act_element(g, m)).collect();
            queue.push_back((action.act_element(g, base), moved));
        }
        for d in lattice.nonzero() {
            let db = lattice.product(d, base);
            if lattice.is_zero(db) {
                continue;
            }
            let restricted: BTreeSet<usize> =
                members.iter().map(|&m| lattice.product(d, m)).filter(|&x| !lattice.is_zero(x)).collect();
            if !restricted.contains(&db) {
                queue.push_back((db, restricted.into_iter().collect()));
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_table_counts() {
        assert_eq!(valid_sharp_tables(1).len(), 1);
        assert_eq!(valid_sharp_tables(2).len(), 4);
        assert!(valid_sharp_tables(3).contains(&SharpTable::trivial(3)));
        assert!(valid_sharp_tables(4).iter().all(|t| t.validate().is_ok()));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_orbit_model(&mut rng(7), 3);
        let b = random_orbit_model(&mut rng(7), 3);
        assert_eq!(a, b);
        let x = random_instance(&mut rng(3));
        let y = random_instance(&mut rng(3));
        assert_eq!(x.lattice.labels(), y.lattice.labels());
        assert_eq!(x.covers, y.covers);
    }

    #[test]
    fn instances_pass_conditions() {
        let mut r = rng(11);
        for _ in 0..5 {
            let level = random_instance(&mut r);
            assert!(level.lattice.len() <= MAX_ELEMENTS);
            assert!(check_conditions(&level.lattice, &level.action, &level.covers).passes());
            let level = random_gamma_instance(&mut r);
            assert!(level.action.order() <= MAX_GROUP_ORDER);
            assert!(check_conditions(&level.lattice, &level.action, &level.covers).passes());
        }
    }

    #[test]
    fn cycle_names() {
        assert_eq!(cycle_name(&[0, 1, 2]), "()");
        assert_eq!(cycle_name(&[1, 2, 0, 3]), "(1 2 3)");
    }
}
