//! Acceptance run: one PASS/FAIL line per criterion, each with its time
//! limit. Lines go straight to stdout so they show without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use indres::homology::{build_c, build_ctilde, chain_map_violation, compare_homology, HomologyGroup, OrbitModel};
use indres::mu::SharpTable;
use indres::presentation::{
    candidate_maps, census, group_homology, orbit_model, sharp_from_lcm, validate_sigma, HomologyOptions,
    SigmaMap,
};
use indres::random::{self, InstanceRng, MAX_ELEMENTS, MAX_GROUP_ORDER};
use indres::resolution::{build_tower, check_conditions, fix_maximal_idem_check, Level};
use num_bigint::BigInt;
use rand::Rng;

const SEED: u64 = 20240;
const DEPTH: usize = 16;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn criterion(results: &mut Vec<bool>, id: usize, name: &str, limit: Duration, run: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let ok = out.ok && elapsed < limit;
    let line = format!(
        "{} {:>2} {name}: {} ({:.3} s, limit {} s)\n",
        if ok { "PASS" } else { "FAIL" },
        id,
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    std::io::stdout().write_all(line.as_bytes()).unwrap();
    results.push(ok);
}

fn torsion(rank: usize, t: &[i64]) -> HomologyGroup {
    HomologyGroup::new(rank, t.iter().map(|&d| BigInt::from(d)).collect())
}

fn homology_is(s: &SigmaMap, expected: &[HomologyGroup]) -> Outcome {
    let h = match group_homology(s, HomologyOptions::default()) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    let shown: Vec<String> = (0..expected.len() + 2).map(|k| h.h(k).to_string()).collect();
    let ok = (0..expected.len() + 2).all(|k| h.h(k) == expected.get(k).cloned().unwrap_or_else(HomologyGroup::zero));
    let detail = format!("H_0..H_{} = {}", expected.len() + 1, shown.join(", "));
    if ok { pass(detail) } else { fail(detail) }
}

fn random_models(rng: &mut InstanceRng, count: usize, n: Option<usize>) -> Vec<OrbitModel> {
    (0..count)
        .map(|_| {
            let n = n.unwrap_or_else(|| rng.gen_range(1..=random::MAX_SHARP_N));
            random::random_orbit_model(rng, n)
        })
        .collect()
}

fn valid_sigmas(n: usize) -> Vec<SigmaMap> {
    candidate_maps(n).into_iter().filter(|s| validate_sigma(s).passes()).collect()
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let secs = Duration::from_secs;
    let flip = SigmaMap::flip(2);
    let klein = SigmaMap::identity(2);

    criterion(&mut results, 1, "ℤ² example", secs(1), || {
        homology_is(&flip, &[HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)])
    });

    criterion(&mut results, 2, "a² = b² example", secs(1), || {
        homology_is(&klein, &[HomologyGroup::free(1), torsion(1, &[2]), HomologyGroup::zero()])
    });

    criterion(&mut results, 3, "vanishing above |Σ|", secs(60), || {
        let mut sigmas = vec![flip.clone(), klein.clone()];
        sigmas.extend(valid_sigmas(3));
        for s in &sigmas {
            let n = s.size();
            let ct = match orbit_model(s, None).and_then(|m| build_ctilde(&m)) {
                Ok(ct) => ct,
                Err(e) => return fail(format!("{s}: {e}")),
            };
            if ct.top() > n {
                return fail(format!("{s}: complex reaches degree {}", ct.top()));
            }
            if let Some(k) = (n + 1..=n + 3).find(|&k| !ct.homology(k).is_zero() || !ct.cohomology(k).is_zero()) {
                return fail(format!("{s}: degree {k} nonzero"));
            }
        }
        pass(format!("{} presentations, H_i = H^i = 0 for i > |Σ|", sigmas.len()))
    });

    let mut rng = random::rng(SEED);
    let models = random_models(&mut rng, 100, None);
    let mut complexes = Vec::new();

    criterion(&mut results, 4, "∂∂ = 0 and dd = 0", secs(60), || {
        complexes = models.iter().map(|m| (build_c(m, m.n()), build_ctilde(m))).collect();
        for (i, (m, (c, ct))) in models.iter().zip(&complexes).enumerate() {
            let (c, ct) = match (c, ct) {
                (Ok(c), Ok(ct)) => (c, ct),
                (Err(e), _) | (_, Err(e)) => return fail(format!("model {i} (n = {}): {e}", m.n())),
            };
            if let Some(k) = c.square_violation() {
                return fail(format!("model {i}: ∂_{k}∂_{} ≠ 0", k + 1));
            }
            if let Some(k) = ct.square_violation() {
                return fail(format!("model {i}: d_{k}d_{} ≠ 0", k + 1));
            }
        }
        pass(format!("{} random models, n ≤ 4", models.len()))
    });

    criterion(&mut results, 5, "∂f = fd", secs(60), || {
        for (i, (m, (c, ct))) in models.iter().zip(&complexes).enumerate() {
            let (Ok(c), Ok(ct)) = (c, ct) else { return fail(format!("model {i} failed to build")) };
            match chain_map_violation(m, c, ct) {
                Ok(None) => {}
                Ok(Some(k)) => return fail(format!("model {i}: degree {k}")),
                Err(e) => return fail(format!("model {i}: {e}")),
            }
        }
        pass(format!("{} random models, all degrees", models.len()))
    });

    criterion(&mut results, 6, "H(C̃) ≅ H(C) for n = 2 and n = 3 with i#j = j", secs(120), || {
        let mut cases: Vec<OrbitModel> = Vec::new();
        for s in [&flip, &klein] {
            match orbit_model(s, None) {
                Ok(m) => cases.push(m),
                Err(e) => return fail(e.to_string()),
            }
        }
        cases.extend(random_models(&mut rng, 50, Some(2)));
        cases.push(OrbitModel::single_orbit(SharpTable::trivial(3)).expect("trivial table"));
        for (i, m) in cases.iter().enumerate() {
            match compare_homology(m) {
                Ok(r) if r.groups_agree && r.isomorphic() => {}
                Ok(r) => return fail(format!("case {i}: {:?}", r.degrees)),
                Err(e) => return fail(format!("case {i}: {e}")),
            }
        }
        pass(format!("{} models (2 examples, 50 random n = 2, trivial n = 3)", cases.len()))
    });

    let instances: Vec<Level> = (0..50).map(|_| random::random_instance(&mut rng)).collect();
    let mut towers = Vec::new();

    criterion(&mut results, 7, "exactness ker π = I′", secs(120), || {
        towers = instances.iter().map(|l| build_tower(l.clone(), DEPTH)).collect();
        let mut levels = 0;
        for (i, (l, t)) in instances.iter().zip(&towers).enumerate() {
            if l.lattice.len() > MAX_ELEMENTS || !check_conditions(&l.lattice, &l.action, &l.covers).passes() {
                return fail(format!("instance {i} is not admissible"));
            }
            let t = match t {
                Ok(t) => t,
                Err(e) => return fail(format!("instance {i}: {e}")),
            };
            for r in t.verify_all() {
                if !r.exact {
                    return fail(format!("instance {i}, level {}: {}", r.level, r.witness.unwrap_or_default()));
                }
                levels += 1;
            }
        }
        pass(format!("{} instances, {levels} levels", instances.len()))
    });

    criterion(&mut results, 8, "tower length ≤ m", secs(120), || {
        let mut by_m = [0usize; 4];
        for (i, (l, t)) in instances.iter().zip(&towers).enumerate() {
            let Ok(t) = t else { return fail(format!("instance {i} failed to build")) };
            let m = l.covers.max_covers();
            if t.truncated || t.length() > m {
                return fail(format!("instance {i}: length {} with m = {m}", t.length()));
            }
            by_m[m.min(3)] += 1;
        }
        pass(format!("{} instances (m = 1: {}, m = 2: {}, m ≥ 3: {})", instances.len(), by_m[1], by_m[2], by_m[3]))
    });

    criterion(&mut results, 9, "census |Σ| = 2", secs(5), || {
        let rows = match census(&[2]) {
            Ok(r) => r,
            Err(e) => return fail(e.to_string()),
        };
        let row = &rows[0];
        let h1: Vec<String> = row.classes.iter().map(|c| c.homology[1].to_string()).collect();
        let distinct = h1.len() == 2 && h1[0] != h1[1];
        let detail = format!("{} canonical ({} raw), H_1 ∈ {{{}}}", row.canonical, row.raw_valid, h1.join(", "));
        if row.canonical == 2 && distinct { pass(detail) } else { fail(detail) }
    });

    criterion(&mut results, 10, "lcm-derived # table = σ_l", secs(30), || {
        let mut count = 0;
        for n in 1..=3 {
            for s in valid_sigmas(n) {
                let table = match sharp_from_lcm(&s, None) {
                    Ok(t) => t,
                    Err(e) => return fail(format!("{s}: {e}")),
                };
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        if table.get(i + 1, j + 1).ok() != Some(s.left(i, j) + 1) {
                            return fail(format!("{s}: entry ({}, {})", i + 1, j + 1));
                        }
                    }
                }
                count += 1;
            }
        }
        pass(format!("{count} valid σ with |Σ| ≤ 3"))
    });

    criterion(&mut results, 11, "stabilizer containment and fix-maximal-idem", secs(60), || {
        let mut orders = std::collections::BTreeSet::new();
        for i in 0..50 {
            let l = random::random_gamma_instance(&mut rng);
            if l.action.order() > MAX_GROUP_ORDER {
                return fail(format!("instance {i}: |Γ| = {}", l.action.order()));
            }
            orders.insert(l.action.order());
            if let Some(w) = fix_maximal_idem_check(&l.lattice, &l.action, 3) {
                return fail(format!("instance {i}: {w}"));
            }
            let t = match build_tower(l, DEPTH) {
                Ok(t) => t,
                Err(e) => return fail(format!("instance {i}: {e}")),
            };
            let r = t.stabilizer_check();
            if !r.holds {
                return fail(format!("instance {i}: {}", r.witness.unwrap_or_default()));
            }
        }
        let orders: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
        pass(format!("50 Γ-semilattices, |Γ| ∈ {{{}}}", orders.join(", ")))
    });

    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
