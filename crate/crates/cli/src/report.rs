//! The analysis report and its two renderings.
//!
//! JSON keys appear in declaration order. The text form is one `key value`
//! line per field with the key column padded; list values are space
//! separated, `-` stands for an empty list, and absent optional fields are
//! omitted. Both forms parse back to the same report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    VectorSpace,
    AffineSpace,
    General,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::VectorSpace => "vector_space",
            Classification::AffineSpace => "affine_space",
            Classification::General => "general",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "vector_space" => Ok(Classification::VectorSpace),
            "affine_space" => Ok(Classification::AffineSpace),
            "general" => Ok(Classification::General),
            _ => Err(CliError::Input(format!("unknown classification {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub dimension: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancingReport {
    pub number: u64,
    pub coset_representatives: Vec<String>,
    pub method: String,
    /// Hadamard indices of the representatives, under `--show-indices`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset_representative_indices: Option<Vec<u64>>,
    /// All of `B`, under `--enumerate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerated_members: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub f: usize,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub name: String,
    pub predicted: u64,
    pub actual: u64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub cardinality: u64,
    pub total_multiplicity: u64,
    pub rank: usize,
    pub classification: Classification,
    pub constant_set: SpaceReport,
    pub balancing: BalancingReport,
    pub fixing_set: SpaceReport,
    pub fully_balanced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientReport>,
    pub closed_form_checks: Vec<ClosedFormCheck>,
}

const KEY_WIDTH: usize = 40;

fn list<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn unlist<T: FromStr>(key: &str, value: &str) -> CliResult<Vec<T>> {
    if value == "-" {
        return Ok(Vec::new());
    }
    value
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| CliError::Input(format!("{key}: bad item {x:?}"))))
        .collect()
}

fn scalar<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::Input(format!("{key}: bad value {value:?}")))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("report JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut lines: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("cardinality".into(), self.cardinality.to_string()),
            ("total_multiplicity".into(), self.total_multiplicity.to_string()),
            ("rank".into(), self.rank.to_string()),
            ("classification".into(), self.classification.to_string()),
            ("constant_set.dimension".into(), self.constant_set.dimension.to_string()),
            ("constant_set.basis".into(), list(&self.constant_set.basis)),
            ("balancing.number".into(), self.balancing.number.to_string()),
            ("balancing.method".into(), self.balancing.method.clone()),
            (
                "balancing.coset_representatives".into(),
                list(&self.balancing.coset_representatives),
            ),
        ];
        if let Some(ix) = &self.balancing.coset_representative_indices {
            lines.push(("balancing.coset_representative_indices".into(), list(ix)));
        }
        if let Some(members) = &self.balancing.enumerated_members {
            lines.push(("balancing.enumerated_members".into(), list(members)));
        }
        lines.push(("fixing_set.dimension".into(), self.fixing_set.dimension.to_string()));
        lines.push(("fixing_set.basis".into(), list(&self.fixing_set.basis)));
        lines.push(("fully_balanced".into(), self.fully_balanced.to_string()));
        if let Some(q) = &self.quotient {
            lines.push(("quotient.f".into(), q.f.to_string()));
            lines.push(("quotient.representatives".into(), list(&q.representatives)));
        }
        for c in &self.closed_form_checks {
            lines.push((
                "check".into(),
                format!(
                    "{} predicted {} actual {} matches {}",
                    c.name, c.predicted, c.actual, c.matches
                ),
            ));
        }
        lines
            .into_iter()
            .map(|(k, v)| format!("{k:<KEY_WIDTH$} {v}\n"))
            .collect()
    }

    pub fn from_text(text: &str) -> CliResult<Self> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        let mut checks = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once(char::is_whitespace)
                .map(|(k, v)| (k, v.trim()))
                .unwrap_or((line.trim(), ""));
            if key == "check" {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [name, "predicted", predicted, "actual", actual, "matches", matches] = parts.as_slice() else {
                    return Err(CliError::Input(format!("malformed check line {line:?}")));
                };
                checks.push(ClosedFormCheck {
                    name: name.to_string(),
                    predicted: scalar("check", predicted)?,
                    actual: scalar("check", actual)?,
                    matches: scalar("check", matches)?,
                });
            } else if fields.insert(key, value).is_some() {
                return Err(CliError::Input(format!("repeated key {key:?}")));
            }
        }
        let mut take = |key: &str| {
            fields
                .remove(key)
                .ok_or_else(|| CliError::Input(format!("missing key {key:?}")))
        };
        let report = AnalysisReport {
            n: scalar("n", take("n")?)?,
            cardinality: scalar("cardinality", take("cardinality")?)?,
            total_multiplicity: scalar("total_multiplicity", take("total_multiplicity")?)?,
            rank: scalar("rank", take("rank")?)?,
            classification: take("classification")?.parse()?,
            constant_set: SpaceReport {
                dimension: scalar("constant_set.dimension", take("constant_set.dimension")?)?,
                basis: unlist("constant_set.basis", take("constant_set.basis")?)?,
            },
            balancing: BalancingReport {
                number: scalar("balancing.number", take("balancing.number")?)?,
                coset_representatives: unlist(
                    "balancing.coset_representatives",
                    take("balancing.coset_representatives")?,
                )?,
                method: take("balancing.method")?.to_string(),
                coset_representative_indices: take("balancing.coset_representative_indices")
                    .ok()
                    .map(|v| unlist("balancing.coset_representative_indices", v))
                    .transpose()?,
                enumerated_members: take("balancing.enumerated_members")
                    .ok()
                    .map(|v| unlist("balancing.enumerated_members", v))
                    .transpose()?,
            },
            fixing_set: SpaceReport {
                dimension: scalar("fixing_set.dimension", take("fixing_set.dimension")?)?,
                basis: unlist("fixing_set.basis", take("fixing_set.basis")?)?,
            },
            fully_balanced: scalar("fully_balanced", take("fully_balanced")?)?,
            quotient: match take("quotient.f") {
                Ok(f) => Some(QuotientReport {
                    f: scalar("quotient.f", f)?,
                    representatives: unlist("quotient.representatives", take("quotient.representatives")?)?,
                }),
                Err(_) => None,
            },
            closed_form_checks: checks,
        };
        if let Some(key) = fields.keys().next() {
            return Err(CliError::Input(format!("unknown key {key:?}")));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> AnalysisReport {
        AnalysisReport {
            n: 4,
            cardinality: 8,
            total_multiplicity: 8,
            rank: 4,
            classification: Classification::General,
            constant_set: SpaceReport {
                dimension: 0,
                basis: vec![],
            },
            balancing: BalancingReport {
                number: 2,
                coset_representatives: vec!["0001".into(), "0110".into()],
                method: "coset".into(),
                coset_representative_indices: Some(vec![1, 6]),
                enumerated_members: None,
            },
            fixing_set: SpaceReport {
                dimension: 1,
                basis: vec!["0010".into()],
            },
            fully_balanced: false,
            quotient: Some(QuotientReport {
                f: 1,
                representatives: vec!["0000".into(), "0001".into()],
            }),
            closed_form_checks: vec![ClosedFormCheck {
                name: "fixing_decomposition".into(),
                predicted: 11,
                actual: 11,
                matches: true,
            }],
        }
    }

    #[test]
    fn text_round_trip() {
        let r = sample();
        assert_eq!(AnalysisReport::from_text(&r.to_text()).unwrap(), r);
        let bare = AnalysisReport {
            quotient: None,
            closed_form_checks: vec![],
            ..sample()
        };
        assert_eq!(AnalysisReport::from_text(&bare.to_text()).unwrap(), bare);
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let r = sample();
        let json = r.to_json();
        assert_eq!(AnalysisReport::from_json(&json).unwrap(), r);
        let n = json.find("\"n\"").unwrap();
        let rank = json.find("\"rank\"").unwrap();
        let checks = json.find("\"closed_form_checks\"").unwrap();
        assert!(n < rank && rank < checks);
        assert!(!json.contains("enumerated_members"));
        assert!(json.contains("\"classification\": \"general\""));
    }

    #[test]
    fn text_parse_errors() {
        let text = sample().to_text();
        assert!(AnalysisReport::from_text(&text.replace("rank", "rnak")).is_err());
        assert!(AnalysisReport::from_text(&format!("{text}n 4\n")).is_err());
        assert!(AnalysisReport::from_text(&text.replace("general", "odd")).is_err());
    }
}
