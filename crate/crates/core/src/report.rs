//! Pass/fail reports shared by every checker.

use serde::Serialize;

/// Witness lists are truncated to this many entries; the status still reflects
/// every failure found.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The semigroup elements (or functions) under test, in display form.
    pub elements: Vec<String>,
    pub basis_point: String,
    /// Outcome of the left-hand side, `"0"` for the zero vector.
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub semigroup: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    /// Status is `Fail` iff `witnesses` is nonempty.
    pub fn new(check: impl Into<String>, semigroup: impl ToString, mut witnesses: Vec<Witness>) -> CheckReport {
        witnesses.truncate(MAX_WITNESSES);
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            check: check.into(),
            semigroup: semigroup.to_string(),
            status,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}
