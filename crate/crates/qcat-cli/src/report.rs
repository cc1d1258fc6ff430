//! Machine- and human-readable run reports.
//!
//! The JSON form (`--json`) is deterministic: fixed field order, no
//! timestamps or timings, fixed seeds unless overridden. Identical inputs
//! therefore produce byte-identical reports. Wall-clock timing is printed in
//! the human rendering only.

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub scope: String,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn from_core(report: &qcat::report::CheckReport) -> Self {
        CheckOutcome {
            name: report.name.clone(),
            passed: report.passed(),
            scope: report.scope.to_string(),
            violations: report.violations.iter().map(|v| v.to_string()).collect(),
            notes: report.notes.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CauchyOutcome {
    pub value: String,
    pub horizon: usize,
    pub stabilized: bool,
}

/// Serialized distributor: explicit source/target references plus the
/// tabulated matrix (rows indexed by target objects, columns by source
/// objects), entries rendered per quantale.
#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DistributorOutcome {
    pub source: String,
    pub target: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

impl DistributorOutcome {
    pub fn from_core(
        d: &qcat::distributor::Distributor<f64>,
        source: &str,
        target: &str,
    ) -> Self {
        DistributorOutcome {
            source: source.into(),
            target: target.into(),
            rows: d.rows().iter().map(|o| d.target().label(o)).collect(),
            cols: d.cols().iter().map(|o| d.source().label(o)).collect(),
            matrix: (0..d.rows().len())
                .map(|r| {
                    (0..d.cols().len())
                        .map(|c| d.entry(r, c).to_string())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct StartOutcome {
    pub start: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixpoint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_forward: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_backward: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerical_limit: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cauchy: Option<CauchyOutcome>,
    /// The tail presheaf the representability search ran against (finite
    /// carriers only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presheaf: Option<DistributorOutcome>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct PairClassification {
    pub left: String,
    pub right: String,
    pub case: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SolveOutcome {
    pub starts: Vec<StartOutcome>,
    /// Classification of every pair of distinct (non-isomorphic) fixpoints.
    pub classifications: Vec<PairClassification>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DemoOutcome {
    pub name: String,
    pub narrative: Vec<String>,
    pub verdict: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DemoListing {
    pub name: String,
    pub description: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demo: Option<DemoOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demos: Option<Vec<DemoListing>>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: String, tolerance: f64) -> Self {
        RunReport {
            version: "v1".into(),
            command,
            tolerance,
            horizon: None,
            checks: Vec::new(),
            solve: None,
            demo: None,
            demos: None,
            passed: true,
        }
    }

    pub fn push_check(&mut self, report: &qcat::report::CheckReport) {
        let outcome = CheckOutcome::from_core(report);
        self.passed &= outcome.passed;
        self.checks.push(outcome);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self, elapsed_ms: u128) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("qcat {} (schema v1)", self.command));
        push(
            &mut out,
            format!(
                "tolerance {}{}",
                self.tolerance,
                self.horizon
                    .map(|h| format!(", horizon {h}"))
                    .unwrap_or_default()
            ),
        );
        for check in &self.checks {
            push(
                &mut out,
                format!(
                    "  [{}] {} ({})",
                    if check.passed { "pass" } else { "FAIL" },
                    check.name,
                    check.scope
                ),
            );
            for v in &check.violations {
                push(&mut out, format!("    violated {v}"));
            }
            for n in &check.notes {
                push(&mut out, format!("    note: {n}"));
            }
        }
        if let Some(solve) = &self.solve {
            for s in &solve.starts {
                let mut line = format!("  start {}: {}", s.start, s.status);
                if let Some(u) = &s.fixpoint {
                    line.push_str(&format!(" at {u}"));
                    if s.numerical_limit == Some(true) {
                        line.push_str(" (numerical limit)");
                    }
                }
                if let Some(c) = &s.cauchy {
                    line.push_str(&format!(
                        " [C = {} at horizon {}{}]",
                        c.value,
                        c.horizon,
                        if c.stabilized { "" } else { ", provisional" }
                    ));
                }
                push(&mut out, line);
            }
            for p in &solve.classifications {
                push(
                    &mut out,
                    format!("  fixpoints {} vs {}: {}", p.left, p.right, p.case),
                );
            }
        }
        if let Some(demo) = &self.demo {
            push(&mut out, format!("  demo {}", demo.name));
            for line in &demo.narrative {
                push(&mut out, format!("    {line}"));
            }
            push(&mut out, format!("  verdict: {}", demo.verdict));
        }
        if let Some(demos) = &self.demos {
            for d in demos {
                push(&mut out, format!("  {} — {}", d.name, d.description));
            }
        }
        push(
            &mut out,
            format!(
                "{} in {elapsed_ms} ms",
                if self.passed { "OK" } else { "FAILED" }
            ),
        );
        out
    }
}
