use serde::{Deserialize, Serialize};

use super::{FiniteSemilattice, GroupAction};
use crate::error::{Error, Result};

/// On-disk form of a semilattice with an optional group action.
///
/// Products with zero, squares and mirrored pairs may be omitted. The zero
/// element is the label `"0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeFile {
    pub elements: Vec<String>,
    pub product: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionFile>,
}

/// Group action block. Without `mul` the action must be faithful and the
/// group law is read off from composition of the listed permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub group: Vec<String>,
    pub tau: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<[String; 3]>>,
}

const ZERO: &str = "0";

impl SemilatticeFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn build(&self) -> Result<(FiniteSemilattice, GroupAction)> {
        let lattice = self.build_semilattice()?;
        let action = match &self.action {
            None => GroupAction::trivial(&lattice),
            Some(a) => a.build(&lattice)?,
        };
        Ok((lattice, action))
    }

    fn build_semilattice(&self) -> Result<FiniteSemilattice> {
        let mut labels = self.elements.clone();
        if !labels.iter().any(|l| l == ZERO) {
            labels.push(ZERO.to_string());
        }
        let n = labels.len();
        let zero = labels.iter().position(|l| l == ZERO).unwrap();
        let idx = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownElement(l.to_string()))
        };
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        for i in 0..n {
            table[i][i] = Some(i);
            table[i][zero] = Some(zero);
            table[zero][i] = Some(zero);
        }
        for [a, b, c] in &self.product {
            let (a, b, c) = (idx(a)?, idx(b)?, idx(c)?);
            for (x, y) in [(a, b), (b, a)] {
                match table[x][y] {
                    Some(old) if old != c => {
                        return Err(Error::InvalidSemilattice(format!(
                            "conflicting products for ({}, {})",
                            labels[x], labels[y]
                        )))
                    }
                    _ => table[x][y] = Some(c),
                }
            }
        }
        let mut full = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                full[i][j] = table[i][j].ok_or_else(|| {
                    Error::InvalidSemilattice(format!("missing product ({}, {})", labels[i], labels[j]))
                })?;
            }
        }
        FiniteSemilattice::from_table(labels, zero, full)
    }

    /// Full listing: every unordered pair of distinct nonzero elements.
    pub fn from_parts(lattice: &FiniteSemilattice, action: Option<&GroupAction>) -> Self {
        let mut product = Vec::new();
        let nz = lattice.nonzero_basis();
        for (i, &a) in nz.iter().enumerate() {
            for &b in &nz[i + 1..] {
                product.push([
                    lattice.label(a).to_string(),
                    lattice.label(b).to_string(),
                    lattice.label(lattice.product(a, b)).to_string(),
                ]);
            }
        }
        let action = action.filter(|a| a.order() > 1).map(|a| ActionFile::from_action(lattice, a));
        Self { elements: lattice.labels().to_vec(), product, action }
    }
}

impl ActionFile {
    fn build(&self, lattice: &FiniteSemilattice) -> Result<GroupAction> {
        let order = self.group.len();
        let g_idx = |l: &str| {
            self.group
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownGroupElement(l.to_string()))
        };
        let n = lattice.len();
        let mut tau: Vec<Vec<Option<usize>>> = vec![vec![None; n]; order];
        for t in &mut tau {
            t[lattice.zero()] = Some(lattice.zero());
        }
        for [g, e, f] in &self.tau {
            let g = g_idx(g)?;
            let (e, f) = (lattice.index_of(e)?, lattice.index_of(f)?);
            if tau[g][e].is_some_and(|old| old != f) {
                return Err(Error::InvalidAction(format!(
                    "conflicting images of {} under {}",
                    lattice.label(e),
                    self.group[g]
                )));
            }
            tau[g][e] = Some(f);
        }
        let tau: Vec<Vec<usize>> = tau
            .into_iter()
            .enumerate()
            .map(|(g, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(e, f)| {
                        f.ok_or_else(|| {
                            Error::InvalidAction(format!(
                                "missing image of {} under {}",
                                lattice.label(e),
                                self.group[g]
                            ))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        match &self.mul {
            None => GroupAction::from_permutations(lattice, self.group.clone(), tau),
            Some(entries) => {
                let mut mul = vec![vec![None; order]; order];
                for [g, h, gh] in entries {
                    mul[g_idx(g)?][g_idx(h)?] = Some(g_idx(gh)?);
                }
                let mul = mul
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|x| {
                                x.ok_or_else(|| {
                                    Error::InvalidAction("incomplete multiplication table".into())
                                })
                            })
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                GroupAction::from_table(lattice, self.group.clone(), mul, tau)
            }
        }
    }

    fn from_action(lattice: &FiniteSemilattice, action: &GroupAction) -> Self {
        let mut tau = Vec::new();
        for g in action.elements() {
            for e in lattice.nonzero() {
                tau.push([
                    action.label(g).to_string(),
                    lattice.label(e).to_string(),
                    lattice.label(action.act_element(g, e)).to_string(),
                ]);
            }
        }
        let mut mul = Vec::new();
        for g in action.elements() {
            for h in action.elements() {
                mul.push([
                    action.label(g).to_string(),
                    action.label(h).to_string(),
                    action.label(action.mul(g, h)).to_string(),
                ]);
            }
        }
        Self { group: action.labels().to_vec(), tau, mul: Some(mul) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP: &str = r#"{
        "elements": ["a", "b", "t", "0"],
        "product": [["a", "b", "0"], ["a", "t", "a"], ["b", "t", "b"]],
        "action": { "group": ["1", "s"],
                    "tau": [["1","a","a"],["1","b","b"],["1","t","t"],
                            ["s","a","b"],["s","b","a"],["s","t","t"]] }
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let file = SemilatticeFile::parse(SWAP).unwrap();
        let (e, act) = file.build().unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(act.order(), 2);
        let again = SemilatticeFile::from_parts(&e, Some(&act));
        let (e2, act2) = SemilatticeFile::parse(&again.to_json()).unwrap().build().unwrap();
        assert_eq!(e, e2);
        assert_eq!(act.tau(), act2.tau());
    }

    #[test]
    fn missing_product_is_reported() {
        let text = r#"{"elements": ["a", "b", "0"], "product": []}"#;
        let err = SemilatticeFile::parse(text).unwrap().build();
        assert!(matches!(err, Err(Error::InvalidSemilattice(_))));
    }
}
