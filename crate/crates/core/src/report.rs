//! Verification reports.
//!
//! A report is a census of claim evaluations: one [`ClaimCheck`] row per
//! (instance, claim). The JSON form has the stable top-level keys
//! `suite_name`, `instances_run`, `passes`, `failures`, `checks` and
//! `wall_time_us`; every row has `instance`, `claim`, `passed`, `witness`
//! (a list of sorted element arrays) and `detail`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub instance: String,
    pub claim: String,
    pub passed: bool,
    #[serde(default)]
    pub witness: Vec<Vec<usize>>,
    #[serde(default)]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_name: String,
    /// Claim evaluations performed; equals `passes + failures.len()`.
    pub instances_run: usize,
    pub passes: usize,
    pub failures: Vec<ClaimCheck>,
    pub checks: Vec<ClaimCheck>,
    pub wall_time_us: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            other => Err(Error::Parameter(format!("unknown report format {other:?}"))),
        }
    }
}

impl VerificationReport {
    pub fn new(suite_name: impl Into<String>) -> Self {
        Self {
            suite_name: suite_name.into(),
            instances_run: 0,
            passes: 0,
            failures: Vec::new(),
            checks: Vec::new(),
            wall_time_us: 0,
        }
    }

    pub fn push(&mut self, check: ClaimCheck) {
        self.instances_run += 1;
        if check.passed {
            self.passes += 1;
        } else {
            self.failures.push(check.clone());
        }
        self.checks.push(check);
    }

    /// Records a claim; `failure` carries the witness sets and a note when the
    /// claim did not hold.
    pub fn record(
        &mut self,
        instance: &str,
        claim: &str,
        failure: Option<(Vec<Vec<usize>>, String)>,
    ) {
        let (passed, witness, detail) = match failure {
            None => (true, Vec::new(), String::new()),
            Some((w, d)) => (false, w, d),
        };
        self.push(ClaimCheck {
            instance: instance.to_string(),
            claim: claim.to_string(),
            passed,
            witness,
            detail,
        });
    }

    pub fn pass(&mut self, instance: &str, claim: &str) {
        self.record(instance, claim, None);
    }

    pub fn fail(&mut self, instance: &str, claim: &str, witness: Vec<Vec<usize>>, detail: impl Into<String>) {
        self.record(instance, claim, Some((witness, detail.into())));
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        for check in other.checks {
            self.push(check);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &str> {
        self.failures.iter().map(|f| f.claim.as_str())
    }

    /// Report with `wall_time_us` cleared, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_us: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let inst_w = self
            .checks
            .iter()
            .map(|c| c.instance.len())
            .chain(["instance".len()])
            .max()
            .unwrap_or(8);
        let claim_w = self
            .checks
            .iter()
            .map(|c| c.claim.len())
            .chain(["claim".len()])
            .max()
            .unwrap_or(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} checks, {} passed, {} failed ({:.3} s)",
            self.suite_name,
            self.instances_run,
            self.passes,
            self.failures.len(),
            self.wall_time_us as f64 / 1e6
        );
        let _ = writeln!(out, "{:<inst_w$}  {:<claim_w$}  result  witness", "instance", "claim");
        for c in &self.checks {
            let witness = if c.witness.is_empty() {
                String::new()
            } else {
                c.witness
                    .iter()
                    .map(|w| format!("{w:?}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(
                out,
                "{:<inst_w$}  {:<claim_w$}  {:<6}  {}{}",
                c.instance,
                c.claim,
                if c.passed { "pass" } else { "FAIL" },
                witness,
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!("  ({})", c.detail)
                }
            );
        }
        out
    }

    pub fn emit(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => self.to_text(),
        }
    }
}
