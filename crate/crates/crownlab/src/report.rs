//! Suite reports: one entry per check, JSON-serialized, written atomically.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// Stable identifier of the verified relation, for traceability.
    pub anchor: String,
    pub status: String,
    pub measured: f64,
    pub threshold: f64,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub verdict: String,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            checks: Vec::new(),
            verdict: "PASS".into(),
        }
    }

    /// Record a check: `measured` must stay at or below `threshold` to pass.
    pub fn push(&mut self, name: &str, anchor: &str, measured: f64, threshold: f64, started: Instant) {
        let pass = measured <= threshold && measured.is_finite();
        self.checks.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: if pass { "PASS".into() } else { "FAIL".into() },
            measured,
            threshold,
            runtime_ms: started.elapsed().as_millis() as u64,
        });
        if !pass {
            self.verdict = "FAIL".into();
        }
    }

    /// Record a boolean check.
    pub fn push_bool(&mut self, name: &str, anchor: &str, pass: bool, started: Instant) {
        self.push(name, anchor, if pass { 0.0 } else { 1.0 }, 0.5, started);
    }

    pub fn pass(&self) -> bool {
        self.verdict == "PASS"
    }

    pub fn merge(&mut self, other: SuiteReport) {
        if !other.pass() {
            self.verdict = "FAIL".into();
        }
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Write the JSON report atomically (temp file + rename).
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(d) = dir {
        std::fs::create_dir_all(d)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_aggregates_over_checks() {
        let mut r = SuiteReport::new("demo", 1);
        let t = Instant::now();
        r.push("ok", "x.y", 1e-9, 1e-6, t);
        assert!(r.pass());
        r.push("bad", "x.z", 2.0, 1.0, t);
        assert!(!r.pass());
        assert_eq!(r.checks.len(), 2);
        assert_eq!(r.checks[1].status, "FAIL");
    }

    #[test]
    fn atomic_write_roundtrip() {
        let dir = std::env::temp_dir().join("crownlab_report_test");
        let path = dir.join("r.json");
        let mut r = SuiteReport::new("demo", 5);
        r.push_bool("b", "a.b", true, Instant::now());
        r.write_atomic(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.seed, 5);
        assert!(back.pass());
        std::fs::remove_dir_all(&dir).ok();
    }
}
