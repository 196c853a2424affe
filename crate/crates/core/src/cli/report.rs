//! Command reports, as JSON or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::structure::{GenerationReport, RankReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub timing_us: u64,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Witness {
        component: String,
        assignment: Vec<(String, String)>,
        value: String,
    },
    Rank {
        report: RankReport,
    },
    Generation {
        report: GenerationReport,
    },
    Coefficients {
        n: usize,
        k: usize,
        alpha: String,
        beta: String,
        evaluated_alpha: String,
        evaluated_beta: String,
        agree: bool,
    },
    Decomposition {
        pairs: Vec<(String, String)>,
        defect_vanishes: bool,
    },
    Factorization {
        alternating_sum: String,
        /// `(coefficient, left, right)` triples of `sum c D S_n E`.
        two_sided: Vec<(String, String, String)>,
        /// `D` of `S_n * D`.
        right_factor: Option<String>,
        verified: bool,
    },
    Standard {
        polynomial: String,
        value_at_basis: String,
    },
    Diagrams {
        minimal: Vec<String>,
    },
}

impl Outcome {
    /// Exit status for the outcome.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Witness { .. } => 1,
            Outcome::Generation { report } if !report.passed => 1,
            Outcome::Coefficients { agree: false, .. } => 1,
            Outcome::Decomposition {
                defect_vanishes: false,
                ..
            } => 1,
            Outcome::Factorization {
                verified: false, ..
            } => 1,
            _ => 0,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        rows.extend(self.inputs.iter().map(|(k, v)| (k.clone(), v.clone())));
        match &self.outcome {
            Outcome::Holds => rows.push(("result".into(), "holds".into())),
            Outcome::Witness {
                component,
                assignment,
                value,
            } => {
                rows.push(("result".into(), "fails".into()));
                rows.push(("component".into(), component.clone()));
                let a = assignment
                    .iter()
                    .map(|(g, e)| format!("{g}->{e}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                rows.push(("assignment".into(), a));
                rows.push(("value".into(), value.clone()));
            }
            Outcome::Rank { report } => rank_rows(&mut rows, "", report),
            Outcome::Generation { report } => {
                rows.push(("result".into(), pass(report.passed)));
                rows.push(("span in kernel".into(), report.span_in_kernel.to_string()));
                rank_rows(&mut rows, "span ", &report.span);
                rank_rows(&mut rows, "kernel ", &report.kernel);
            }
            Outcome::Coefficients {
                alpha,
                beta,
                evaluated_alpha,
                evaluated_beta,
                agree,
                ..
            } => {
                rows.push(("alpha".into(), alpha.clone()));
                rows.push(("beta".into(), beta.clone()));
                rows.push(("alpha (evaluation)".into(), evaluated_alpha.clone()));
                rows.push(("beta (evaluation)".into(), evaluated_beta.clone()));
                rows.push(("agree".into(), agree.to_string()));
            }
            Outcome::Decomposition {
                pairs,
                defect_vanishes,
            } => {
                for (i, (a, b)) in pairs.iter().enumerate() {
                    rows.push((format!("term {}", i + 1), format!("({a}) [x1,x2] ({b})")));
                }
                rows.push(("defect vanishes".into(), defect_vanishes.to_string()));
            }
            Outcome::Factorization {
                alternating_sum,
                two_sided,
                right_factor,
                verified,
            } => {
                rows.push(("alternating sum".into(), alternating_sum.clone()));
                for (i, (c, d, e)) in two_sided.iter().enumerate() {
                    rows.push((format!("term {}", i + 1), format!("{c} * ({d}) S ({e})")));
                }
                if let Some(d) = right_factor {
                    rows.push(("right factor".into(), d.clone()));
                }
                rows.push(("verified".into(), verified.to_string()));
            }
            Outcome::Standard {
                polynomial,
                value_at_basis,
            } => {
                rows.push(("polynomial".into(), polynomial.clone()));
                rows.push(("value at e1..en".into(), value_at_basis.clone()));
            }
            Outcome::Diagrams { minimal } => {
                rows.push(("minimal".into(), minimal.join(" ")));
            }
        }
        if !self.seeds.is_empty() {
            let s = self
                .seeds
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            rows.push(("seeds".into(), s));
        }
        rows.push((
            "time".into(),
            format!("{:.3} ms", self.timing_us as f64 / 1000.0),
        ));

        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k:<width$}  {v}").expect("write to string");
        }
        out
    }
}

fn pass(b: bool) -> String {
    if b { "pass" } else { "fail" }.to_string()
}

fn rank_rows(rows: &mut Vec<(String, String)>, prefix: &str, r: &RankReport) {
    rows.push((format!("{prefix}target"), r.target.clone()));
    rows.push((format!("{prefix}degree"), r.degree.to_string()));
    rows.push((
        format!("{prefix}matrix"),
        format!("{} x {}", r.rows, r.cols),
    ));
    rows.push((format!("{prefix}rank"), r.rank.to_string()));
    rows.push((format!("{prefix}kernel dim"), r.kernel_dim.to_string()));
    rows.push((format!("{prefix}quotient dim"), r.quotient_dim.to_string()));
    if !r.seed_ranks.is_empty() {
        let s = r
            .seed_ranks
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        rows.push((format!("{prefix}seed ranks"), s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = Report {
            command: "check".into(),
            inputs: [("pair".to_string(), "m2".to_string())]
                .into_iter()
                .collect(),
            outcome: Outcome::Witness {
                component: "x1*x2 - x2*x1".into(),
                assignment: vec![("x1".into(), "E".into()), ("x2".into(), "F".into())],
                value: "[[1, 0], [0, -1]]".into(),
            },
            timing_us: 12,
            seeds: vec![0, 7],
        };
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.outcome.exit_code(), 1);
        assert!(r.to_text().contains("x1->E, x2->F"));
    }
}
