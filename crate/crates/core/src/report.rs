//! Structured pass/fail records for identity checks.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::matrix::RingMatrix;

/// Outcome of one named identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First counterexample indices; empty when the check passed.
    pub witness: Vec<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Records a check; `witness = None` means it passed.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        self.record_timed(name, witness, Duration::ZERO);
    }

    pub fn record_timed(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>, elapsed: Duration) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness: witness.unwrap_or_default(),
            elapsed,
        });
    }

    /// Runs `f` and records its result with the measured wall time.
    pub fn time<F>(&mut self, name: impl Into<String>, f: F)
    where
        F: FnOnce() -> Option<Vec<usize>>,
    {
        let start = Instant::now();
        let witness = f();
        self.record_timed(name, witness, start.elapsed());
    }

    /// Records equality of two matrices, witnessing the first differing
    /// `(row, col)`.
    pub fn record_eq(&mut self, name: impl Into<String>, lhs: &RingMatrix, rhs: &RingMatrix) {
        let witness = lhs.first_difference(rhs).map(|(r, c)| vec![r, c]);
        self.record(name, witness);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True if the named check exists and passed.
    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    /// One line per check: `PASS|FAIL <subject> <name> [witness]`.
    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{tag} {} {}", self.subject, c.name);
            if !c.passed {
                let w: Vec<String> = c.witness.iter().map(usize::to_string).collect();
                let _ = write!(out, " witness=({})", w.join(","));
            }
            if timings {
                let _ = write!(out, " time={:.3}ms", c.elapsed.as_secs_f64() * 1e3);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON including per-check wall times in milliseconds.
    pub fn to_json_with_timings(&self) -> serde_json::Value {
        let mut v = self.to_json();
        if let Some(checks) = v.get_mut("checks").and_then(|c| c.as_array_mut()) {
            for (json, c) in checks.iter_mut().zip(&self.checks) {
                json["elapsed_ms"] = serde_json::json!(c.elapsed.as_secs_f64() * 1e3);
            }
        }
        v
    }
}
