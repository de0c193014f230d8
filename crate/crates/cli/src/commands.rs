use std::fs;
use std::path::Path;

use indres::presentation::{
    census as run_census, check_abc, group_homology, validate_sigma, AbcStatus, HomologyOptions,
    PresentationFile, SigmaMap,
};
use indres::resolution::{build_tower, check_conditions, CoverFile, CoverSystem, Level};
use indres::semilattice::SemilatticeFile;
use indres::suites::{
    format_condition, presentation_suite, random_suite, semilattice_suite, RandomCounts, Status,
    SuiteReport,
};
use indres::Error;
use serde_json::{json, Value};

pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

pub enum Outcome {
    Report(Report),
    /// Unreadable or malformed input, with its location.
    Malformed(String),
}

fn report(status: Status, text: String, mut json: Value) -> Outcome {
    json["status"] = serde_json::to_value(status).expect("plain enum");
    Outcome::Report(Report { status, text, json })
}

/// Pretty JSON with sorted keys, so parsing and re-rendering is the identity.
pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::Malformed(format!("{}: {e}", path.display())))
}

fn malformed(path: &Path, e: Error) -> Outcome {
    Outcome::Malformed(format!("{}: {e}", path.display()))
}

fn load_sigma(path: &Path) -> Result<SigmaMap, Outcome> {
    let text = read(path)?;
    PresentationFile::from_json(&text)
        .and_then(|f| f.to_sigma())
        .map_err(|e| malformed(path, e))
}

fn abc_status(s: AbcStatus) -> Status {
    match s {
        AbcStatus::Verified => Status::Pass,
        AbcStatus::Violated => Status::Violation,
        AbcStatus::Inconclusive => Status::Inconclusive,
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::Inconclusive(_) | Error::InconclusiveCheck(_) => Status::Inconclusive,
        _ => Status::Violation,
    }
}

pub fn check(path: &Path, length_bound: usize, max_steps: Option<usize>) -> Outcome {
    let s = match load_sigma(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let v = validate_sigma(&s);
    let failures: Vec<String> = v.failures().iter().map(|(c, w)| format_condition(c, w)).collect();
    let mut text = format!("G = {s}\n");
    if !failures.is_empty() {
        for f in &failures {
            text.push_str(f);
            text.push('\n');
        }
        let json = json!({ "presentation": s.to_string(), "conditions": v.as_map(), "failures": failures });
        return report(Status::Violation, text, json);
    }
    text.push_str("σ: bijection, (*), (**), (***), (****) hold\n");
    let abc = check_abc(&s, length_bound, max_steps);
    text.push_str(&abc.summary());
    text.push('\n');
    let json = json!({
        "presentation": s.to_string(),
        "conditions": v.as_map(),
        "failures": failures,
        "abc": abc,
        "abc_summary": abc.summary(),
    });
    report(abc_status(abc.status()), text, json)
}

pub fn homology(
    path: &Path,
    length_bound: usize,
    max_steps: Option<usize>,
    cross_check_c: bool,
    cohomology: bool,
) -> Outcome {
    let s = match load_sigma(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let opts = HomologyOptions { length_bound, max_steps, cohomology, cross_check_c };
    match group_homology(&s, opts) {
        Ok(h) => {
            let agrees = h.cross_check.as_ref().is_none_or(|c| c.isomorphic());
            let status = if agrees { Status::Pass } else { Status::Violation };
            let json = serde_json::to_value(&h).expect("plain data");
            report(status, h.text(), json)
        }
        Err(e) => {
            let msg = match &e {
                Error::ConditionViolated { condition, witness } if *condition != "abc" => {
                    format_condition(condition, witness)
                }
                Error::ConditionViolated { witness, .. } => witness.clone(),
                other => other.to_string(),
            };
            let json = json!({ "presentation": s.to_string(), "error": msg });
            report(error_status(&e), format!("G = {s}\n{msg}\n"), json)
        }
    }
}

pub fn census(sizes: &[usize]) -> Outcome {
    match run_census(sizes) {
        Ok(rows) => {
            let text = rows.iter().map(|r| r.text()).collect::<String>();
            let json = json!({ "rows": rows });
            report(Status::Pass, text, json)
        }
        Err(e) => report(error_status(&e), format!("{e}\n"), json!({ "error": e.to_string() })),
    }
}

fn load_level(semilattice: &Path, covers: Option<&Path>) -> Result<Level, Outcome> {
    let text = read(semilattice)?;
    let (lattice, action) =
        SemilatticeFile::parse(&text).and_then(|f| f.build()).map_err(|e| malformed(semilattice, e))?;
    let system = match covers {
        Some(path) => {
            let text = read(path)?;
            CoverFile::parse(&text)
                .and_then(|f| CoverSystem::from_file(&lattice, &f))
                .map_err(|e| malformed(path, e))?
        }
        None => CoverSystem::empty(&lattice),
    };
    Level::new(lattice, action, system).map_err(|e| malformed(semilattice, e))
}

pub fn resolve(semilattice: &Path, covers: &Path, depth: usize) -> Outcome {
    let level = match load_level(semilattice, Some(covers)) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let conditions = check_conditions(&level.lattice, &level.action, &level.covers);
    if let Some((c, w)) = conditions.first_violation() {
        let msg = format!("condition ({c}) violated: {w}");
        return report(Status::Violation, format!("{msg}\n"), json!({ "conditions": conditions, "error": msg }));
    }
    let m = level.covers.max_covers();
    let tower = match build_tower(level, depth) {
        Ok(t) => t,
        Err(e) => return report(error_status(&e), format!("{e}\n"), json!({ "error": e.to_string() })),
    };
    let exactness = tower.verify_all();
    let mut text = String::new();
    for (k, level) in tower.levels.iter().enumerate() {
        text.push_str(&format!(
            "E_{k}: {} nonzero elements, {} covers\n",
            level.lattice.nonzero().count(),
            level.covers.total()
        ));
    }
    for r in &exactness {
        let verdict = if r.exact { "exact".to_string() } else { format!("NOT exact: {}", r.witness.as_deref().unwrap_or("")) };
        text.push_str(&format!("level {}: {verdict}\n", r.level));
    }
    let status = if exactness.iter().any(|r| !r.exact) {
        Status::Violation
    } else if tower.truncated {
        text.push_str(&format!("truncated at depth {depth}\n"));
        Status::Inconclusive
    } else {
        text.push_str(&format!("length {} (bound m = {m})\n", tower.length()));
        if tower.length() > m {
            Status::Violation
        } else {
            Status::Pass
        }
    };
    let mut json = tower.dump();
    json["exactness"] = serde_json::to_value(&exactness).expect("plain data");
    json["m"] = json!(m);
    report(status, text, json)
}

pub fn verify(
    instance: &str,
    covers: Option<&Path>,
    length_bound: usize,
    max_steps: Option<usize>,
    depth: usize,
    seed: u64,
) -> Outcome {
    let (kind, suite): (&str, SuiteReport) = if instance == "random" {
        ("random", random_suite(seed, RandomCounts::default(), depth))
    } else {
        let path = Path::new(instance);
        let text = match read(path) {
            Ok(t) => t,
            Err(o) => return o,
        };
        let value: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return malformed(path, e.into()),
        };
        if value.get("alphabet").is_some() {
            let s = match load_sigma(path) {
                Ok(s) => s,
                Err(o) => return o,
            };
            ("presentation", presentation_suite(&s, length_bound, max_steps))
        } else if value.get("elements").is_some() {
            let level = match load_level(path, covers) {
                Ok(l) => l,
                Err(o) => return o,
            };
            ("semilattice", semilattice_suite(&level, depth))
        } else {
            return Outcome::Malformed(format!(
                "{instance}: expected a presentation (\"alphabet\") or a semilattice (\"elements\")"
            ));
        }
    };
    let mut json = serde_json::to_value(&suite).expect("plain data");
    json["instance"] = json!(kind);
    if kind == "random" {
        json["seed"] = json!(seed);
    }
    report(suite.status(), suite.text(), json)
}
