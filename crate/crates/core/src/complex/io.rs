//! JSON interchange for complexes and filtrations.
//!
//! ```text
//! {"degrees": {"<r>": ["label", ...]},
//!  "differentials": {"<r>": [[targetIndex, sourceIndex, "num/den"], ...]}}
//! {"levels": {"label": p}}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ChainComplex, ComplexError, Degree, FilteredComplex};
use crate::linalg::{Rational, SparseMatrix};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("degree key {0:?} is not an integer")]
    BadDegree(String),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Linalg(#[from] crate::linalg::LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<(usize, usize, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationJson {
    pub levels: BTreeMap<String, u32>,
}

fn parse_degree(key: &str) -> Result<Degree, IoError> {
    key.trim()
        .parse()
        .map_err(|_| IoError::BadDegree(key.to_string()))
}

impl ChainComplex {
    pub fn to_json_value(&self) -> ComplexJson {
        let degrees = self
            .degrees()
            .map(|r| (r.to_string(), self.basis(r).to_vec()))
            .collect();
        let differentials = self
            .degrees()
            .filter_map(|r| {
                let d = self.differential_ref(r)?;
                (!d.is_zero()).then(|| {
                    (
                        r.to_string(),
                        d.iter().map(|(i, j, v)| (i, j, v.to_string())).collect(),
                    )
                })
            })
            .collect();
        ComplexJson {
            degrees,
            differentials,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn from_json_value(json: &ComplexJson) -> Result<Self, IoError> {
        let mut basis = BTreeMap::new();
        for (key, labels) in &json.degrees {
            basis.insert(parse_degree(key)?, labels.clone());
        }
        let dim = |r: Degree| basis.get(&r).map_or(0, Vec::len);
        let mut diffs = BTreeMap::new();
        for (key, triples) in &json.differentials {
            let r = parse_degree(key)?;
            let entries = triples
                .iter()
                .map(|(i, j, v)| Ok((*i, *j, v.parse::<Rational>()?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            diffs.insert(r, SparseMatrix::from_entries(dim(r - 1), dim(r), entries)?);
        }
        Ok(ChainComplex::new(basis, diffs)?)
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Self::from_json_value(&serde_json::from_str(text)?)
    }
}

impl FilteredComplex {
    pub fn levels_json(&self) -> String {
        let levels = self
            .complex()
            .degrees()
            .flat_map(|r| {
                self.complex()
                    .basis(r)
                    .iter()
                    .cloned()
                    .zip(self.levels(r).iter().copied())
            })
            .collect();
        serde_json::to_string_pretty(&FiltrationJson { levels }).expect("plain data serializes")
    }

    pub fn from_json(complex: Arc<ChainComplex>, levels_json: &str) -> Result<Self, IoError> {
        let parsed: FiltrationJson = serde_json::from_str(levels_json)?;
        let levels: HashMap<String, u32> = parsed.levels.into_iter().collect();
        Ok(FilteredComplex::new(complex, &levels)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::triangle;
    use super::*;

    #[test]
    fn json_shape() {
        let c = triangle();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["degrees"]["2"][0], "abc");
        assert_eq!(v["differentials"]["2"][0], serde_json::json!([0, 0, "1/1"]));
        assert_eq!(
            v["differentials"]["2"][2],
            serde_json::json!([2, 0, "-1/1"])
        );
    }

    #[test]
    fn json_round_trip() {
        let c = triangle();
        assert_eq!(ChainComplex::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn accepts_plain_integers_and_rejects_junk() {
        let text =
            r#"{"degrees": {"0": ["a"], "1": ["e"]}, "differentials": {"1": [[0, 0, "2"]]}}"#;
        let c = ChainComplex::from_json(text).unwrap();
        assert_eq!(
            c.differential(1).get(0, 0),
            Some(&Rational::from_integer(2))
        );
        assert!(ChainComplex::from_json(r#"{"degrees": {"x": ["a"]}}"#).is_err());
        let out_of_range =
            r#"{"degrees": {"0": ["a"], "1": ["e"]}, "differentials": {"1": [[1, 0, "1"]]}}"#;
        assert!(ChainComplex::from_json(out_of_range).is_err());
    }

    #[test]
    fn filtration_round_trip() {
        let c = Arc::new(triangle());
        let levels: HashMap<String, u32> = ["a", "b", "c", "ab", "bc", "ac", "abc"]
            .iter()
            .enumerate()
            .map(|(i, l)| (l.to_string(), if i < 3 { 0 } else { 1 }))
            .collect();
        let f = FilteredComplex::new(Arc::clone(&c), &levels).unwrap();
        let back = FilteredComplex::from_json(c, &f.levels_json()).unwrap();
        assert_eq!(back, f);
    }
}
