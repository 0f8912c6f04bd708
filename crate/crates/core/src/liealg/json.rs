use serde::{Deserialize, Serialize};

use super::{LieAlgebra, LieError};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub k: usize,
    pub q: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

/// Wire form: only `i < j` brackets, zero brackets omitted, 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

impl From<&LieAlgebra> for LieAlgebraJson {
    fn from(l: &LieAlgebra) -> LieAlgebraJson {
        LieAlgebraJson {
            dim: l.dim,
            basis: l.basis_names.clone(),
            brackets: l
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, terms)| BracketJson {
                    i,
                    j,
                    terms: terms.into_iter().map(|(k, q)| TermJson { k, q }).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<LieAlgebraJson> for LieAlgebra {
    type Error = LieError;

    fn try_from(js: LieAlgebraJson) -> Result<LieAlgebra, LieError> {
        let n = js.dim;
        if js.basis.len() != n {
            return Err(LieError::Schema(format!("basis has {} names for dim {n}", js.basis.len())));
        }
        let mut l = LieAlgebra::abelian(n).with_names(js.basis);
        let mut seen = std::collections::HashSet::new();
        for b in js.brackets {
            if b.i >= b.j || b.j >= n {
                return Err(LieError::Schema(format!("bracket pair ({}, {}) must satisfy i < j < dim", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(LieError::Schema(format!("bracket pair ({}, {}) listed twice", b.i, b.j)));
            }
            if let Some(t) = b.terms.iter().find(|t| t.k >= n) {
                return Err(LieError::Schema(format!("term index {} out of range", t.k)));
            }
            let terms: Vec<(usize, Rat)> = b.terms.into_iter().map(|t| (t.k, t.q)).collect();
            l.set_bracket(b.i, b.j, &terms);
        }
        Ok(l)
    }
}

impl LieAlgebra {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&LieAlgebraJson::from(self)).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&LieAlgebraJson::from(self)).expect("plain data serializes")
    }

    /// Parses and validates.
    pub fn from_json(s: &str) -> Result<LieAlgebra, LieError> {
        let js: LieAlgebraJson = serde_json::from_str(s).map_err(|e| LieError::Schema(e.to_string()))?;
        let l = LieAlgebra::try_from(js)?;
        l.validate().map_err(LieError::Invalid)?;
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut l = LieAlgebra::abelian(3).with_names(["x", "y", "z"]);
        l.set_bracket(0, 1, &[(2, Rat::new(-3, 7))]);
        let s = l.to_json();
        assert_eq!(
            s,
            r#"{"dim":3,"basis":["x","y","z"],"brackets":[{"i":0,"j":1,"terms":[{"k":2,"q":"-3/7"}]}]}"#
        );
        let back = LieAlgebra::from_json(&s).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_pair = r#"{"dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":0,"terms":[]}]}"#;
        assert!(matches!(LieAlgebra::from_json(bad_pair), Err(LieError::Schema(_))));
        let jacobi = r#"{"dim":3,"basis":["a","b","c"],"brackets":[
            {"i":0,"j":1,"terms":[{"k":2,"q":"1"}]},{"i":0,"j":2,"terms":[{"k":0,"q":"1"}]}]}"#;
        assert!(matches!(LieAlgebra::from_json(jacobi), Err(LieError::Invalid(_))));
        assert!(matches!(LieAlgebra::from_json("{"), Err(LieError::Schema(_))));
    }
}
