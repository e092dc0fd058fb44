//! Uniform pass/fail reports with counterexample witnesses.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

/// Witnesses kept per identity; further failures are only counted.
pub const MAX_WITNESSES_PER_IDENTITY: usize = 32;

/// One failed instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): lhs = {}, rhs = {}",
            self.identity,
            self.witness.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Result of an axiom checker.
///
/// `passed` is true iff no identity instance failed. `evaluated` counts the
/// instances that were tested, so a vacuous pass is visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub evaluated: usize,
    pub failures: usize,
    pub checks: Vec<Violation>,
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport {
            passed: true,
            evaluated: 0,
            failures: 0,
            checks: Vec::new(),
        }
    }

    /// Records one evaluated instance; `lhs == rhs` decides pass/fail.
    pub fn expect_eq<T: PartialEq + Display>(
        &mut self,
        identity: &str,
        witness: impl FnOnce() -> Vec<String>,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        self.evaluated += 1;
        if lhs == rhs {
            return true;
        }
        self.push_failure(identity, witness(), lhs.to_string(), rhs.to_string());
        false
    }

    /// Records one evaluated instance that must hold.
    pub fn expect(
        &mut self,
        identity: &str,
        ok: bool,
        witness: impl FnOnce() -> Vec<String>,
        lhs: impl FnOnce() -> String,
        rhs: impl FnOnce() -> String,
    ) -> bool {
        self.evaluated += 1;
        if !ok {
            self.push_failure(identity, witness(), lhs(), rhs());
        }
        ok
    }

    fn push_failure(&mut self, identity: &str, witness: Vec<String>, lhs: String, rhs: String) {
        self.passed = false;
        self.failures += 1;
        self.keep_witness(Violation {
            identity: identity.to_string(),
            witness,
            lhs,
            rhs,
        });
    }

    fn keep_witness(&mut self, v: Violation) {
        let kept = self.checks.iter().filter(|w| w.identity == v.identity).count();
        if kept < MAX_WITNESSES_PER_IDENTITY {
            self.checks.push(v);
        }
    }

    /// Appends another report, keeping this report's witnesses first.
    pub fn merge(&mut self, other: CheckReport) {
        self.evaluated += other.evaluated;
        self.failures += other.failures;
        for v in other.checks {
            self.keep_witness(v);
        }
        self.passed = self.failures == 0;
    }

    /// Merges a sequence of reports in order.
    pub fn concat(reports: impl IntoIterator<Item = CheckReport>) -> CheckReport {
        let mut out = CheckReport::new();
        for r in reports {
            out.merge(r);
        }
        out
    }

    pub fn first(&self) -> Option<&Violation> {
        self.checks.first()
    }

    pub fn failed_identity(&self, identity: &str) -> bool {
        self.checks.iter().any(|v| v.identity == identity)
    }

    /// Failure counts grouped by identity name.
    pub fn failures_by_identity(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        for v in &self.checks {
            *out.entry(v.identity.as_str()).or_insert(0) += 1;
        }
        out
    }

    pub fn summary(&self) -> String {
        match self.first() {
            None => format!("passed ({} instances)", self.evaluated),
            Some(v) => format!(
                "{} of {} instances failed; first: {}",
                self.failures, self.evaluated, v
            ),
        }
    }
}

impl Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
