//! Machine-readable verification reports shared by the library
//! verifiers and the command-line front end.

use serde::{Deserialize, Serialize};

/// One named check: pass/fail plus an optional witness string describing
/// the first failing (or noteworthy) sample.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn warn(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            witness: Some(witness.into()),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }
}

/// Aggregated result of one verification suite run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub complex: String,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(complex: impl Into<String>, samples: usize) -> Self {
        VerificationReport {
            complex: complex.into(),
            samples,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Accumulates a named check across many samples, retaining the first
/// failure witness.
pub struct CheckAccumulator {
    name: String,
    tested: usize,
    failure: Option<String>,
}

impl CheckAccumulator {
    pub fn new(name: impl Into<String>) -> Self {
        CheckAccumulator {
            name: name.into(),
            tested: 0,
            failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn tested(&self) -> usize {
        self.tested
    }

    pub fn finish(self) -> CheckResult {
        match self.failure {
            Some(w) => CheckResult::fail(self.name, w),
            None if self.tested == 0 => {
                CheckResult::warn(self.name, "vacuous: no samples exercised this check")
            }
            None => CheckResult::pass(self.name),
        }
    }
}
