//! Outcome records for identity checks.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails {
        witness: Vec<i64>,
        lhs: String,
        rhs: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, i64>,
    /// Human-readable description of the index window that was checked.
    pub range: String,
    pub cases: u64,
    #[serde(flatten)]
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(identity: &str, params: &[(&str, i64)], range: impl Into<String>) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            range: range.into(),
            cases: 0,
            status: Status::Holds,
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// Records one comparison; only the first failure is kept as witness.
    pub fn check<T: PartialEq + Display>(&mut self, witness: &[i64], lhs: &T, rhs: &T) -> bool {
        self.cases += 1;
        let ok = lhs == rhs;
        if !ok && self.status == Status::Holds {
            self.status = Status::Fails {
                witness: witness.to_vec(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            };
        }
        ok
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Folds another report's cases and first failure into this one.
    pub fn absorb(&mut self, other: &IdentityReport) {
        self.cases += other.cases;
        if self.status == Status::Holds && other.status != Status::Holds {
            self.status = other.status.clone();
        }
        for n in &other.notes {
            if !self.notes.contains(n) {
                self.notes.push(n.clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut r = IdentityReport::new("x", &[("n", 3)], "all");
        assert!(r.check(&[1], &1, &1));
        assert!(!r.check(&[2], &1, &2));
        assert!(!r.check(&[3], &5, &2));
        assert_eq!(r.cases, 3);
        assert_eq!(
            r.status,
            Status::Fails {
                witness: vec![2],
                lhs: "1".into(),
                rhs: "2".into()
            }
        );
    }

    #[test]
    fn serializes_with_flat_status() {
        let r = IdentityReport::new("x", &[], "none");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "holds");
    }
}
