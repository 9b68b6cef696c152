//! Run reports: the structured record every command leaves behind.
//!
//! A report carries the effective configuration echo, the named checks with
//! their measured values and bounds, the artifact list, and an optional
//! command-specific result payload. The whole body is hashed so two runs
//! with the same configuration and seed can be compared byte for byte;
//! wall-clock timings sit outside the hashed section. Reports are written
//! as standalone pretty-printed files and appended as compact lines to
//! `runs.jsonl`, which is never truncated.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// One named check of a run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    /// Stable name, `suite/detail` style.
    pub name: String,
    /// Whether the check passed.
    pub pass: bool,
    /// Measured value, when the check has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    /// Bound or reference value the measurement is held against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    /// Tolerance of the comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Free-form annotation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    /// Check that `measured` matches `bound` to within `tolerance`.
    pub fn matches(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: (measured - bound).abs() <= tolerance,
            measured: Some(measured),
            bound: Some(bound),
            tolerance: Some(tolerance),
            note: None,
        }
    }

    /// Check that `measured` does not exceed `bound` by more than
    /// `tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured <= bound + tolerance,
            measured: Some(measured),
            bound: Some(bound),
            tolerance: Some(tolerance),
            note: None,
        }
    }

    /// Check that `measured` does not fall below `bound` by more than
    /// `tolerance`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured >= bound - tolerance,
            measured: Some(measured),
            bound: Some(bound),
            tolerance: Some(tolerance),
            note: None,
        }
    }

    /// Check with no measurement, only an outcome.
    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass, measured: None, bound: None, tolerance: None, note: None }
    }

    /// Attaches an annotation.
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(m) = self.measured {
            write!(f, " measured={m:.6e}")?;
        }
        if let Some(b) = self.bound {
            write!(f, " bound={b:.6e}")?;
        }
        if let Some(t) = self.tolerance {
            write!(f, " tol={t:.1e}")?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Deterministic body of a report; this is what gets hashed.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBody {
    /// Command that produced the report.
    pub command: String,
    /// Effective configuration, defaults filled in.
    pub config: serde_json::Value,
    /// Seed the run used.
    pub seed: u64,
    /// Checks in execution order.
    pub checks: Vec<CheckResult>,
    /// Files the run wrote, relative to the output directory.
    pub artifacts: Vec<String>,
    /// Command-specific payload.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

/// Wall-clock timings, outside the hashed section.
#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    /// Total run time in seconds.
    pub total_seconds: f64,
}

/// Complete report of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Hashed section.
    pub report: ReportBody,
    /// Hex digest of the serialized `report` section.
    pub content_hash: String,
    /// Timings, excluded from the hash.
    pub timings: Timings,
}

impl RunReport {
    /// Seals a body with its content hash and timing.
    pub fn new(report: ReportBody, total_seconds: f64) -> Self {
        let serialized =
            serde_json::to_string(&report).expect("report bodies serialize without error");
        let mut hasher = Sha256::new();
        hasher.update(serialized.as_bytes());
        let content_hash = format!("{:x}", hasher.finalize());
        Self { report, content_hash, timings: Timings { total_seconds } }
    }

    /// Whether every check passed.
    pub fn all_pass(&self) -> bool {
        self.report.checks.iter().all(|c| c.pass)
    }

    /// Prints one line per check plus a verdict line.
    pub fn print_summary(&self) {
        for check in &self.report.checks {
            println!("{check}");
        }
        let failed = self.report.checks.iter().filter(|c| !c.pass).count();
        println!(
            "{}: {} checks, {} failed",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.report.checks.len(),
            failed
        );
    }

    /// Writes the standalone report file and appends the compact line to
    /// `runs.jsonl`. Returns the standalone file path.
    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let name = format!("report-{}.json", &self.content_hash[..16]);
        let path = dir.join(name);
        let pretty =
            serde_json::to_string_pretty(self).expect("reports serialize without error");
        std::fs::write(&path, pretty + "\n")?;
        let compact = serde_json::to_string(self).expect("reports serialize without error");
        let mut log = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(dir.join("runs.jsonl"))?;
        writeln!(log, "{compact}")?;
        Ok(path)
    }
}
