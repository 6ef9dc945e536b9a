//! Identity definition files: a JSON array of records that extend the
//! built-in catalog.
//!
//! ```json
//! [{"id": "mine", "lhs": "prod(k=1..n, L(s(j))/(L(s(k)) - L(s(k+1))))",
//!   "rhs": "sign(j-1)*binom(n, j-1)", "params": {"j": "1..n+1"},
//!   "status": "proved"}]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{IdentitySpec, Kind, ParamSpec, RegistryError, Rhs, Status};
use crate::template::{parse_range, parse_with_params};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    /// Parameter name to an inclusive range `lo..hi`, affine in `n`.
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default)]
    pub kind: Kind,
    #[serde(default = "one")]
    pub min_n: u32,
    #[serde(default)]
    pub notes: String,
}

fn one() -> u32 {
    1
}

impl IdentityRecord {
    pub fn into_spec(self) -> Result<IdentitySpec, RegistryError> {
        let names: Vec<&str> = self.params.keys().map(String::as_str).collect();
        let template = |src: &str| {
            parse_with_params(src, &names).map_err(|source| RegistryError::Template {
                id: self.id.clone(),
                source,
            })
        };
        let lhs = template(&self.lhs)?;
        let rhs = Rhs::Template(template(&self.rhs)?);
        let params = self
            .params
            .iter()
            .map(|(name, range)| {
                let (lo, hi) = parse_range(range, &[] as &[&str]).map_err(|source| RegistryError::Template {
                    id: self.id.clone(),
                    source,
                })?;
                Ok(ParamSpec {
                    name: name.clone(),
                    lo,
                    hi,
                })
            })
            .collect::<Result<_, RegistryError>>()?;
        Ok(IdentitySpec {
            id: self.id,
            kind: self.kind,
            status: self.status,
            lhs,
            rhs,
            params,
            min_n: self.min_n.max(1),
            independent_of: None,
            notes: self.notes,
        })
    }
}

/// Parses a definition file.
pub fn load_identities(text: &str) -> Result<Vec<IdentitySpec>, RegistryError> {
    let records: Vec<IdentityRecord> = serde_json::from_str(text).map_err(|e| RegistryError::File(e.to_string()))?;
    records.into_iter().map(IdentityRecord::into_spec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_records() {
        let text = r#"[{"id": "mine", "lhs": "prod(k=1..n, L(s(j))/(L(s(k)) - L(s(k+1))))",
            "rhs": "sign(j-1)*binom(n, j-1)", "params": {"j": "1..n+1"}, "status": "proved"}]"#;
        let specs = load_identities(text).unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].kind, Kind::Symmetrized);
        assert_eq!(specs[0].params[0].range(3).unwrap(), (1, 4));
    }

    #[test]
    fn rejects_bad_records() {
        assert!(matches!(load_identities("{"), Err(RegistryError::File(_))));
        let bad = r#"[{"id": "x", "lhs": "sum(k=1..n", "rhs": "1", "status": "proved"}]"#;
        assert!(matches!(load_identities(bad), Err(RegistryError::Template { .. })));
        let status = r#"[{"id": "x", "lhs": "1", "rhs": "1", "status": "maybe"}]"#;
        assert!(matches!(load_identities(status), Err(RegistryError::File(_))));
    }
}
