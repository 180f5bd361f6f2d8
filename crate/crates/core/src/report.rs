//! Machine-readable verification records.
//!
//! Every checker returns [`CheckRecord`]s instead of panicking; failures are
//! data. Rational witnesses serialize as `"p/q"` strings.

use serde::Serialize;
use serde_json::Value;

use crate::sampling::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// How a status was established.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub samples: usize,
    pub primes: Vec<u64>,
    pub exhaustive: bool,
    /// Set when the check is complete by construction, e.g. a basis
    /// enumeration of a multilinear identity over the rationals.
    pub exact_exhaustive: bool,
}

impl Evidence {
    pub fn samples(n: usize) -> Self {
        Evidence { samples: n, ..Default::default() }
    }

    pub fn exact_exhaustive() -> Self {
        Evidence { exact_exhaustive: true, ..Default::default() }
    }

    pub fn modular(primes: Vec<u64>) -> Self {
        Evidence { primes, exhaustive: true, ..Default::default() }
    }

    pub fn merge(mut self, other: &Evidence) -> Self {
        self.samples += other.samples;
        for p in &other.primes {
            if !self.primes.contains(p) {
                self.primes.push(*p);
            }
        }
        self.exhaustive |= other.exhaustive;
        self.exact_exhaustive |= other.exact_exhaustive;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, evidence: Evidence) -> Self {
        CheckRecord { name: name.into(), status: Status::Pass, witness: None, evidence, detail: None }
    }

    pub fn fail(name: impl Into<String>, witness: Value, evidence: Evidence) -> Self {
        CheckRecord { name: name.into(), status: Status::Fail, witness: Some(witness), evidence, detail: None }
    }

    pub fn inconclusive(name: impl Into<String>, evidence: Evidence, why: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::Inconclusive,
            witness: None,
            evidence,
            detail: Some(Value::String(why.into())),
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    /// `Fail` if anything failed, else `Inconclusive` if anything was, else `Pass`.
    pub fn overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect()
    }
}

/// Top-level document written by the command line tool.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub budget: Budget,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub data: Value,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, budget: Budget, checks: CheckReport, data: Value, elapsed_ms: u128) -> Self {
        let status = checks.overall();
        Report { command: command.into(), budget, status, checks: checks.checks, data, elapsed_ms }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Inconclusive => 0,
            Status::Fail => 1,
        }
    }
}
