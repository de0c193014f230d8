use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sigma::SigmaMap;
use crate::error::{Error, Result};

/// `{"alphabet": ["a","b"], "sigma": [[["a","b"],["b","a"]], …]}`, one entry
/// `[[x, y], [σ_l(x,y), σ_r(x,y)]]` per pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub sigma: Vec<[[String; 2]; 2]>,
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Builds the map. A missing diagonal pair defaults to `σ(a,a) = (a,a)`
    /// and a pair given in one orientation only is mirrored. Pairs missing in
    /// both orientations and conflicting duplicates are errors.
    pub fn to_sigma(&self) -> Result<SigmaMap> {
        let n = self.alphabet.len();
        let index = |name: &str, at: usize| -> Result<usize> {
            self.alphabet
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Parse(format!("sigma[{at}]: unknown letter `{name}`")))
        };
        let mut given: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (at, [[a, b], [c, d]]) in self.sigma.iter().enumerate() {
            let key = (index(a, at)?, index(b, at)?);
            let value = (index(c, at)?, index(d, at)?);
            if let Some(old) = given.insert(key, value) {
                if old != value {
                    return Err(Error::Parse(format!("sigma[{at}]: σ({a},{b}) given twice")));
                }
            }
        }
        let mut table = vec![vec![(0, 0); n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = match (given.get(&(a, b)), given.get(&(b, a))) {
                    (Some(&v), _) => v,
                    _ if a == b => (a, a),
                    (None, Some(&(x, y))) => (y, x),
                    (None, None) => {
                        return Err(Error::Parse(format!(
                            "σ({},{}) missing in both orientations",
                            self.alphabet[a], self.alphabet[b]
                        )))
                    }
                };
            }
        }
        SigmaMap::new(self.alphabet.clone(), table)
    }

    /// Lists every pair explicitly.
    pub fn from_sigma(s: &SigmaMap) -> Self {
        let n = s.size();
        let name = |a: usize| s.letter(a).to_string();
        let sigma = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| {
                let (x, y) = s.get(a, b);
                [[name(a), name(b)], [name(x), name(y)]]
            })
            .collect();
        Self { alphabet: s.alphabet().to_vec(), sigma }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_listing_is_completed() {
        let f = PresentationFile::from_json(r#"{"alphabet":["a","b"],"sigma":[[["a","b"],["b","a"]]]}"#).unwrap();
        assert_eq!(f.to_sigma().unwrap(), SigmaMap::flip(2));
    }

    #[test]
    fn round_trip() {
        let s = SigmaMap::identity(3);
        let f = PresentationFile::from_sigma(&s);
        let back = PresentationFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back.to_sigma().unwrap(), s);
    }

    #[test]
    fn errors_are_located() {
        let f = PresentationFile::from_json(r#"{"alphabet":["a","b"],"sigma":[[["a","c"],["b","a"]]]}"#).unwrap();
        assert!(f.to_sigma().unwrap_err().to_string().contains("sigma[0]"));
        let f = PresentationFile::from_json(r#"{"alphabet":["a","b","c"],"sigma":[[["a","b"],["b","a"]]]}"#).unwrap();
        assert!(f.to_sigma().is_err());
    }
}
