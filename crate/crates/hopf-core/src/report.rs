//! Check records shared by every verification suite.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for visibility, never gates the suite.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    pub description: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    /// The formula the check exercises.
    pub anchor: String,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl Check {
    pub fn exact(id: &str, description: impl Into<String>, pass: bool, anchor: &str) -> Self {
        Check {
            id: id.to_string(),
            family: None,
            description: description.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual: None,
            tolerance: None,
            anchor: anchor.to_string(),
            detail: String::new(),
        }
    }

    /// Passes when `residual < tolerance`; a NaN residual fails.
    pub fn within(id: &str, description: impl Into<String>, residual: f64, tolerance: f64, anchor: &str) -> Self {
        let mut c = Check::exact(id, description, residual < tolerance, anchor);
        c.residual = Some(residual);
        c.tolerance = Some(tolerance);
        c
    }

    pub fn info(id: &str, description: impl Into<String>, anchor: &str) -> Self {
        let mut c = Check::exact(id, description, true, anchor);
        c.status = Status::Info;
        c
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn with_family(mut self, family: &str) -> Self {
        self.family = Some(family.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Milliseconds; zeroed when timestamps are suppressed.
    pub wall_time_ms: f64,
    pub seed: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>, wall_time_ms: f64) -> Self {
        let status = if checks.iter().all(Check::passed) { Status::Pass } else { Status::Fail };
        SuiteReport { suite: suite.to_string(), status, checks, wall_time_ms, seed }
    }

    pub fn run(suite: &str, seed: u64, f: impl FnOnce() -> Vec<Check>) -> Self {
        let t = Instant::now();
        let checks = f();
        SuiteReport::new(suite, seed, checks, t.elapsed().as_secs_f64() * 1e3)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Maximum of residuals, propagating NaN so that a NaN never hides as a pass.
pub fn max_residual(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, r| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::within("x", "", f64::NAN, 1.0, "").passed());
        assert!(max_residual([0.1, f64::NAN, 0.2]).is_nan());
    }

    #[test]
    fn info_never_fails_a_suite() {
        let r = SuiteReport::new("s", 0, vec![Check::info("i", "", "")], 0.0);
        assert!(r.passed());
    }
}
