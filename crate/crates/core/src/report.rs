//! Check reports shared by every verification routine.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No counterexample in the population, for a law that is not expected to hold.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub status: Status,
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(law: impl Into<String>) -> Self {
        Self { law: law.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(law: impl Into<String>, witness: Value) -> Self {
        Self { law: law.into(), status: Status::Fail, witness: Some(witness) }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(law: impl Into<String>, witness: Option<Value>) -> Self {
        match witness {
            None => Self::pass(law),
            Some(w) => Self::fail(law, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub population: Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(suite: impl Into<String>, population: Value, seed: u64) -> Self {
        Self { suite: suite.into(), population, checks: Vec::new(), seed, notes: BTreeMap::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.notes.insert(key.into(), value.into());
    }

    /// True iff no check failed; inconclusive checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn status_of(&self, law: &str) -> Option<Status> {
        self.check(law).map(|c| c.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            write!(f, "  [{}] {}", c.status, c.law)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.notes {
            match v {
                Value::String(s) => writeln!(f, "  {k}: {s}")?,
                other => writeln!(f, "  {k}: {other}")?,
            }
        }
        Ok(())
    }
}
