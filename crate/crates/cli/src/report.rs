//! Verification reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Falsified,
    Error,
}

impl Verdict {
    /// Process exit code for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Falsified => 1,
            Verdict::Error => 2,
        }
    }
}

/// One sub-check. A failed check may carry a counterexample that can be
/// re-checked on its own (a cover file plus whatever pins it needs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            passed,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn with_counterexample(mut self, value: serde_json::Value) -> Self {
        self.counterexample = Some(value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl Report {
    /// Verified iff there is at least one check and all passed. Checks are
    /// sorted by id so the report does not depend on evaluation order.
    pub fn from_checks(claim: &str, seed: u64, mut checks: Vec<Check>, elapsed_ms: u64) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let verdict = if !checks.is_empty() && checks.iter().all(|c| c.passed) {
            Verdict::Verified
        } else {
            Verdict::Falsified
        };
        Report {
            claim: claim.to_string(),
            verdict,
            checks,
            seed,
            elapsed_ms,
        }
    }

    pub fn error(claim: &str, seed: u64, message: &str, elapsed_ms: u64) -> Self {
        Report {
            claim: claim.to_string(),
            verdict: Verdict::Error,
            checks: vec![Check::new("error", false, message)],
            seed,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The report with timing removed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_and_sorting() {
        let r = Report::from_checks(
            "x",
            1,
            vec![Check::new("b", true, ""), Check::new("a", true, "")],
            0,
        );
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.checks[0].id, "a");
        let r = Report::from_checks("x", 1, vec![Check::new("a", false, "")], 0);
        assert_eq!(r.verdict, Verdict::Falsified);
        assert_eq!(Report::from_checks("x", 1, vec![], 0).verdict, Verdict::Falsified);
        assert_eq!(Verdict::Error.exit_code(), 2);
        let text = r.to_json();
        assert!(text.contains("\"verdict\": \"falsified\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
