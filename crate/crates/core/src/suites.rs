//! Invariant suites run by `indres verify`: each check records a status and,
//! when it fails, a witness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::homology::{build_c, build_ctilde, chain_map_violation, compare_homology, OrbitModel};
use crate::mu::SharpTable;
use crate::presentation::{
    check_abc, cube_identity_violation, orbit_model, validate_sigma, AbcStatus, SigmaMap,
};
use crate::random::{self, InstanceRng};
use crate::resolution::{build_tower, check_conditions, fix_maximal_idem_check, Level};

/// Largest family size tried by the `fix-maximal-idem` check.
pub const FIX_FAMILY_BOUND: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Violation => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Pass, detail);
    }

    /// Pass when `witness` is `None`.
    fn expect_none(&mut self, name: impl Into<String>, witness: Option<String>, ok: impl Into<String>) {
        match witness {
            None => self.pass(name, ok),
            Some(w) => self.push(name, Status::Violation, w),
        }
    }

    fn error(&mut self, name: impl Into<String>, e: &Error) {
        let status = match e {
            Error::Inconclusive(_) | Error::InconclusiveCheck(_) => Status::Inconclusive,
            _ => Status::Violation,
        };
        self.push(name, status, e.to_string());
    }

    /// Worst status over all checks.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", c.status, c.name, c.detail));
        }
        out.push_str(&format!("overall: {}\n", self.status()));
        out
    }
}

/// Complex checks shared by presentations and random models. `require_iso`
/// makes a homology mismatch between `C` and `C̃` a violation; otherwise it
/// is only reported.
pub fn model_checks(report: &mut SuiteReport, model: &OrbitModel, require_iso: bool) {
    let n = model.n();
    let built = build_c(model, n).and_then(|c| build_ctilde(model).map(|ct| (c, ct)));
    let (c, ct) = match built {
        Ok(x) => x,
        Err(e) => return report.error("complexes", &e),
    };
    report.expect_none("∂∂ = 0 on C", c.square_violation().map(|k| format!("∂_{k}∂_{} ≠ 0", k + 1)), "exact zero");
    report.expect_none("dd = 0 on C̃", ct.square_violation().map(|k| format!("d_{k}d_{} ≠ 0", k + 1)), "exact zero");
    match chain_map_violation(model, &c, &ct) {
        Ok(w) => report.expect_none("∂f = fd", w.map(|k| format!("fails in degree {k}")), "all degrees"),
        Err(e) => return report.error("∂f = fd", &e),
    }
    let above = (n + 1..=c.top().max(ct.top()))
        .find(|&k| !ct.homology(k).is_zero() || !ct.cohomology(k).is_zero())
        .map(|k| format!("degree {k}"));
    report.expect_none("H_k = H^k = 0 above n", above, format!("n = {n}"));
    match compare_homology(model) {
        Ok(r) if r.isomorphic() => report.pass("H(C) ≅ H(C̃)", "f_* is an isomorphism"),
        Ok(r) => {
            let k = r.degrees.iter().find(|d| !d.equal).map(|d| d.degree).or(r.cone_witness);
            let detail = format!("differs in degree {}", k.map_or("?".into(), |k| k.to_string()));
            if require_iso {
                report.push("H(C) ≅ H(C̃)", Status::Violation, detail);
            } else {
                report.pass("H(C) ≅ H(C̃)", format!("{detail} (not required here)"));
            }
        }
        Err(e) => report.error("H(C) ≅ H(C̃)", &e),
    }
}

/// Whether the isomorphism `H(C) ≅ H(C̃)` is expected: `n ≤ 2`, or `n = 3`
/// with `i#j = j`.
pub fn isomorphism_expected(sharp: &SharpTable) -> bool {
    sharp.n() <= 2 || (sharp.n() == 3 && *sharp == SharpTable::trivial(3))
}

pub fn presentation_suite(s: &SigmaMap, length_bound: usize, max_steps: Option<usize>) -> SuiteReport {
    let mut report = SuiteReport::default();
    let v = validate_sigma(s);
    let failures: Vec<String> = v.failures().iter().map(|(c, w)| format_condition(c, w)).collect();
    if !failures.is_empty() {
        report.push("σ conditions", Status::Violation, failures.join("; "));
        return report;
    }
    report.pass("σ conditions", "bijection, (*), (**), (***), (****)");
    let abc = check_abc(s, length_bound, max_steps);
    let status = match abc.status() {
        AbcStatus::Verified => Status::Pass,
        AbcStatus::Violated => Status::Violation,
        AbcStatus::Inconclusive => Status::Inconclusive,
    };
    report.push("(a)(b)(c)", status, abc.summary());
    match cube_identity_violation(s, max_steps) {
        Ok(w) => report.expect_none("cube identity", w, "reverses to ε on all distinct triples"),
        Err(e) => report.error("cube identity", &e),
    }
    let model = match orbit_model(s, max_steps) {
        Ok(m) => m,
        Err(e) => {
            report.error("sharp table", &e);
            return report;
        }
    };
    report.pass("sharp table", "lcm oracle agrees with σ_l entrywise");
    let rows = model.sharp().row_injectivity_violation().map(|(i, j, k)| format!("row {i}: {j}, {k}"));
    report.expect_none("sharp rows injective", rows, "all rows");
    model_checks(&mut report, &model, isomorphism_expected(model.sharp()));
    report
}

/// `(*) fails at a`, or `σ is not a bijection: …`.
pub fn format_condition(condition: &str, witness: &str) -> String {
    if condition == "bijection" {
        format!("σ is not a bijection: {witness}")
    } else {
        format!("({condition}) fails at {witness}")
    }
}

/// Conditions, tower exactness, the length bound and both stabilizer checks.
pub fn semilattice_suite(level: &Level, max_depth: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    let conditions = check_conditions(&level.lattice, &level.action, &level.covers);
    if let Some((c, w)) = conditions.first_violation() {
        report.push("conditions (i)-(iii)", Status::Violation, format!("({c}): {w}"));
        return report;
    }
    report.pass("conditions (i)-(iii)", "hold");
    report.expect_none(
        "fix-maximal-idem",
        fix_maximal_idem_check(&level.lattice, &level.action, FIX_FAMILY_BOUND),
        format!("families of size ≤ {FIX_FAMILY_BOUND}"),
    );
    let m = level.covers.max_covers();
    let tower = match build_tower(level.clone(), max_depth) {
        Ok(t) => t,
        Err(e) => {
            report.error("tower", &e);
            return report;
        }
    };
    if tower.truncated {
        report.push("tower", Status::Inconclusive, format!("not trivial after {max_depth} steps"));
    } else {
        report.pass("tower", format!("length {}", tower.length()));
    }
    let derived = tower.levels.iter().enumerate().skip(1).find_map(|(k, l)| {
        check_conditions(&l.lattice, &l.action, &l.covers)
            .first_violation()
            .map(|(c, w)| format!("level {k} ({c}): {w}"))
    });
    report.expect_none("derived levels satisfy (i)-(iii)", derived, "all levels");
    let inexact = tower.verify_all().into_iter().find(|r| !r.exact).map(|r| {
        format!("level {}: {}", r.level, r.witness.unwrap_or_default())
    });
    report.expect_none("ker π = I′", inexact, format!("{} levels", tower.levels.len()));
    if !tower.truncated {
        let long = (tower.length() > m).then(|| format!("length {} exceeds m = {m}", tower.length()));
        report.expect_none("length ≤ m", long, format!("{} ≤ {m}", tower.length()));
    }
    let stab = tower.stabilizer_check();
    report.expect_none("stabilizer containment", stab.witness.filter(|_| !stab.holds), format!("{} stabilizers", stab.checked));
    report
}

/// Sizes of the randomized suites.
#[derive(Clone, Copy, Debug)]
pub struct RandomCounts {
    pub models: usize,
    pub rank_two: usize,
    pub instances: usize,
    pub gamma_instances: usize,
}

impl Default for RandomCounts {
    fn default() -> Self {
        Self { models: 100, rank_two: 50, instances: 50, gamma_instances: 50 }
    }
}

/// Randomized suites; each check aggregates its instances and names the
/// first failing one.
pub fn random_suite(seed: u64, counts: RandomCounts, max_depth: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut report = SuiteReport::default();
    let models = |rng: &mut InstanceRng, count: usize, fixed_n: Option<usize>| -> Vec<OrbitModel> {
        (0..count)
            .map(|_| {
                let n = fixed_n.unwrap_or_else(|| rand::Rng::gen_range(rng, 1..=random::MAX_SHARP_N));
                random::random_orbit_model(rng, n)
            })
            .collect()
    };
    let general = models(&mut rng, counts.models, None);
    merge(&mut report, "random models", general.iter().map(|m| {
        let mut r = SuiteReport::default();
        model_checks(&mut r, m, false);
        r
    }));
    let rank_two = models(&mut rng, counts.rank_two, Some(2));
    merge(&mut report, "random n = 2 models", rank_two.iter().map(|m| {
        let mut r = SuiteReport::default();
        model_checks(&mut r, m, true);
        r
    }));
    let instances: Vec<Level> = (0..counts.instances).map(|_| random::random_instance(&mut rng)).collect();
    merge(&mut report, "random (E, ℛ)", instances.iter().map(|l| semilattice_suite(l, max_depth)));
    let gamma: Vec<Level> = (0..counts.gamma_instances).map(|_| random::random_gamma_instance(&mut rng)).collect();
    merge(&mut report, "random Γ-semilattices", gamma.iter().map(|l| semilattice_suite(l, max_depth)));
    report
}

/// Folds per-instance reports into one check per check name.
fn merge(report: &mut SuiteReport, prefix: &str, runs: impl Iterator<Item = SuiteReport>) {
    let mut merged: Vec<(String, usize, usize, Status, Option<String>)> = Vec::new();
    for (i, run) in runs.enumerate() {
        for c in run.checks {
            let slot = match merged.iter().position(|m| m.0 == c.name) {
                Some(p) => p,
                None => {
                    merged.push((c.name.clone(), 0, 0, Status::Pass, None));
                    merged.len() - 1
                }
            };
            let m = &mut merged[slot];
            m.1 += 1;
            if c.status == Status::Pass {
                m.2 += 1;
            } else if m.4.is_none() {
                m.4 = Some(format!("instance {i}: {}", c.detail));
            }
            m.3 = m.3.max(c.status);
        }
    }
    for (name, total, passed, status, witness) in merged {
        let mut detail = format!("{passed}/{total}");
        if let Some(w) = witness {
            detail = format!("{detail}; {w}");
        }
        report.push(format!("{prefix}: {name}"), status, detail);
    }
}
