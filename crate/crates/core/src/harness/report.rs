//! Reports: one entry per scheduled check, JSON with sorted keys and
//! canonical rational strings, or a one-line-per-check text summary.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::scenario::{Mode, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented deviation from a literal reading; does not fail the run.
    Finding,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
        }
    }
}

/// Where a value was observed and the exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sample: Option<usize>,
    pub detail: String,
    pub values: Vec<String>,
}

/// Witnesses kept per check.
pub const MAX_WITNESSES: usize = 3;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub samples: usize,
    pub evaluations: usize,
    /// Largest absolute value among the compared quantities.
    pub residual: String,
    pub witnesses: Vec<Witness>,
    /// Wall time; kept out of JSON so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Equality ignores `elapsed`.
impl PartialEq for CheckResult {
    fn eq(&self, o: &Self) -> bool {
        (&self.name, &self.claim, self.status, self.samples, self.evaluations, &self.residual, &self.witnesses)
            == (&o.name, &o.claim, o.status, o.samples, o.evaluations, &o.residual, &o.witnesses)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub suite: Suite,
    pub mode: Mode,
    pub seed: u64,
    pub n: usize,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: &str, suite: Suite, mode: Mode, seed: u64, n: usize) -> Self {
        Report { scenario: scenario.to_string(), suite, mode, seed, n, checks: Vec::new(), summary: Summary::default() }
    }

    pub fn push(&mut self, c: CheckResult) {
        match c.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Finding => self.summary.finding += 1,
        }
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Process exit code: 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Parse(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario {} (suite {:?}, mode {:?}, seed {}, n = {})", self.scenario, self.suite, self.mode, self.seed, self.n);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<8} {:<28} {} [{} samples, {} evaluations, residual {}, {:.3}s]",
                c.status.label(),
                c.name,
                c.claim,
                c.samples,
                c.evaluations,
                c.residual,
                c.elapsed.as_secs_f64()
            );
            for w in &c.witnesses {
                let at = w.sample.map(|i| format!("sample {i}: ")).unwrap_or_default();
                let _ = writeln!(s, "         witness {at}{} = [{}]", w.detail, w.values.join(", "));
            }
        }
        let _ = writeln!(s, "{} passed, {} failed, {} findings", self.summary.pass, self.summary.fail, self.summary.finding);
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Renders the report and writes it to `path` when given.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<String> {
    let out = match format {
        Format::Json => report.to_json()?,
        Format::Text => report.to_text(),
    };
    if let Some(p) = path {
        std::fs::write(p, &out).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", Suite::Linalg, Mode::Exact, 7, 1);
        r.push(CheckResult {
            name: "a".into(),
            claim: "x = y".into(),
            status: Status::Pass,
            samples: 2,
            evaluations: 4,
            residual: "0".into(),
            witnesses: vec![],
            elapsed: Duration::from_millis(5),
        });
        r.push(CheckResult {
            name: "b".into(),
            claim: "x ≠ 0".into(),
            status: Status::Fail,
            samples: 1,
            evaluations: 1,
            residual: "3/2".into(),
            witnesses: vec![Witness { sample: Some(0), detail: "value".into(), values: vec!["3/2".into()] }],
            elapsed: Duration::ZERO,
        });
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = r.to_json().unwrap();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        assert!(!text.contains("elapsed"));
    }

    #[test]
    fn keys_are_sorted() {
        let text = sample().to_json().unwrap();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("checks") < pos("mode") && pos("mode") < pos("scenario") && pos("scenario") < pos("seed"));
    }

    #[test]
    fn text_lists_counts() {
        let t = sample().to_text();
        assert!(t.contains("1 passed, 1 failed, 0 findings"));
        assert!(t.lines().any(|l| l.starts_with("FAIL")));
    }

    #[test]
    fn exit_code_reflects_failures() {
        let mut r = sample();
        assert_eq!(r.exit_code(), 1);
        r.checks.pop();
        r.summary.fail = 0;
        assert_eq!(r.exit_code(), 0);
    }
}
