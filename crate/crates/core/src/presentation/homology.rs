use serde::Serialize;

use super::abc::{check_abc, AbcReport, AbcStatus};
use super::sigma::{validate_sigma, SigmaMap};
use super::word::lcm;
use crate::error::{Error, Result};
use crate::homology::{build_ctilde, compare_homology, ComparisonReport, HomologyGroup, OrbitModel};
use crate::mu::SharpTable;

/// `i#j` from the lcm oracle: `lcm(s_i, s_j) = s_i·s_k` gives `k`. The closed
/// form `k = σ_l(s_i, s_j)` is checked against it entry by entry.
pub fn sharp_from_lcm(s: &SigmaMap, max_steps: Option<usize>) -> Result<SharpTable> {
    let n = s.size();
    let mut table = SharpTable::partial(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let z = lcm(&[i], &[j], s, max_steps)?;
            if z.len() != 2 || z[0] != i {
                return Err(Error::SharpMismatch(format!(
                    "lcm({}, {}) has unexpected shape",
                    s.letter(i),
                    s.letter(j)
                )));
            }
            let k = z[1];
            if k != s.left(i, j) {
                return Err(Error::SharpMismatch(format!(
                    "{}#{}: oracle {} vs closed form {}",
                    i + 1,
                    j + 1,
                    k + 1,
                    s.left(i, j) + 1
                )));
            }
            table.set(i + 1, j + 1, k + 1)?;
        }
    }
    Ok(table)
}

/// Single orbit `[P]`, every `M_i` the 1×1 identity and the lcm-derived `#`
/// table.
pub fn orbit_model(s: &SigmaMap, max_steps: Option<usize>) -> Result<OrbitModel> {
    let report = validate_sigma(s);
    if let Some((condition, witness)) = report.failures().first() {
        return Err(Error::ConditionViolated { condition, witness: witness.to_string() });
    }
    OrbitModel::single_orbit(sharp_from_lcm(s, max_steps)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub length_bound: usize,
    pub max_steps: Option<usize>,
    pub cohomology: bool,
    pub cross_check_c: bool,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self { length_bound: super::abc::DEFAULT_LENGTH_BOUND, max_steps: None, cohomology: false, cross_check_c: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupHomology {
    pub relations: Vec<String>,
    pub abc: AbcReport,
    pub sharp: Vec<Vec<usize>>,
    /// `H_0, …, H_n`; higher groups vanish since the complex stops at `n`.
    pub homology: Vec<HomologyGroup>,
    pub cohomology: Option<Vec<HomologyGroup>>,
    pub cross_check: Option<ComparisonReport>,
}

impl GroupHomology {
    /// `H_k`, zero above the top degree.
    pub fn h(&self, k: usize) -> HomologyGroup {
        self.homology.get(k).cloned().unwrap_or_else(HomologyGroup::zero)
    }

    pub fn text(&self) -> String {
        let n = self.homology.len() - 1;
        let mut out = format!("G = ⟨ {} ⟩\n{}\n", self.relations.join(", "), self.abc.summary());
        for (k, h) in self.homology.iter().enumerate() {
            out.push_str(&format!("H_{k} ≅ {h}\n"));
        }
        out.push_str(&format!("H_k = 0 for k > {n}\n"));
        if let Some(co) = &self.cohomology {
            for (k, h) in co.iter().enumerate() {
                out.push_str(&format!("H^{k} ≅ {h}\n"));
            }
            out.push_str(&format!("H^k = 0 for k > {n}\n"));
        }
        if let Some(c) = &self.cross_check {
            let verdict = if c.isomorphic() { "agrees" } else { "DISAGREES" };
            out.push_str(&format!("cross-check against C: {verdict}\n"));
        }
        out
    }
}

/// Group homology with trivial coefficients from `C̃`. Fails when σ is
/// invalid or (a)(b)(c) is violated up to the bound; an inconclusive bound
/// check surfaces as `Error::InconclusiveCheck`.
pub fn group_homology(s: &SigmaMap, opts: HomologyOptions) -> Result<GroupHomology> {
    let model = orbit_model(s, opts.max_steps)?;
    let abc = check_abc(s, opts.length_bound, opts.max_steps);
    match abc.status() {
        AbcStatus::Violated => {
            return Err(Error::ConditionViolated { condition: "abc", witness: abc.summary() });
        }
        AbcStatus::Inconclusive => return Err(Error::InconclusiveCheck(abc.summary())),
        AbcStatus::Verified => {}
    }
    let ct = build_ctilde(&model)?;
    let homology = ct.homology_all();
    let cohomology = opts.cohomology.then(|| ct.cohomology_all());
    let cross_check = if opts.cross_check_c { Some(compare_homology(&model)?) } else { None };
    Ok(GroupHomology {
        relations: s.relations(),
        abc,
        sharp: model.sharp().rows(),
        homology,
        cohomology,
        cross_check,
    })
}
