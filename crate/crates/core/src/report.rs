//! Structured check reports shared by every verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Mat;
use crate::scalars::Field;

/// Identifier of the JSON envelope emitted by the command-line tool.
pub const SCHEMA: &str = "bqd-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and recorded, but not asserted.
    Evidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Evidence => "evidence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The group of identities the check belongs to.
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, id: impl Into<String>, anchor: &str, status: Status, witness: Option<String>) {
        self.checks.push(Check { id: id.into(), anchor: anchor.to_string(), status, witness });
    }

    /// Record a boolean check; `witness` is only evaluated on failure.
    pub fn check(&mut self, id: impl Into<String>, anchor: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.push(id, anchor, Status::Pass, None);
        } else {
            self.push(id, anchor, Status::Fail, Some(witness()));
        }
    }

    /// Record a computed value without asserting anything about it.
    pub fn evidence(&mut self, id: impl Into<String>, anchor: &str, value: impl Into<String>) {
        self.push(id, anchor, Status::Evidence, Some(value.into()));
    }

    /// Exact matrix equality, witnessed by the first differing entry.
    pub fn check_eq<F: Field>(&mut self, id: impl Into<String>, anchor: &str, lhs: &Mat<F>, rhs: &Mat<F>) {
        if lhs.shape() != rhs.shape() {
            let w = format!("shape {:?} vs {:?}", lhs.shape(), rhs.shape());
            self.push(id, anchor, Status::Fail, Some(w));
            return;
        }
        match lhs.first_difference(rhs) {
            None => self.push(id, anchor, Status::Pass, None),
            Some((i, j)) => {
                let w = format!("entry ({i},{j}): {} vs {}", lhs.get(i, j), rhs.get(i, j));
                self.push(id, anchor, Status::Fail, Some(w));
            }
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// No check failed (evidence entries do not count as failures).
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.subject)?;
        for c in &self.checks {
            write!(f, "  [{:<8}] {:<40} ({})", c.status, c.id, c.anchor)?;
            if let Some(w) = &c.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
