use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lie::IdentityOutcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    GenericPass,
    Error,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::GenericPass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::GenericPass => "generic-pass",
            Status::Error => "error",
        })
    }
}

/// Structured payload attached to a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Attachment {
    /// Row-major polynomial strings.
    Matrix { rows: Vec<Vec<String>> },
    /// Filtered dimensions, deformed against undeformed.
    Dimensions { deformed: Vec<usize>, undeformed: Vec<usize> },
    Values { entries: BTreeMap<String, String> },
}

fn yes() -> bool {
    true
}

fn is_yes(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity or claim being checked, written as a formula.
    pub reference: String,
    pub status: Status,
    /// First nonzero component of a failing identity, or the error message.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Diagnostic checks are reported but never decide the exit status.
    #[serde(default = "yes", skip_serializing_if = "is_yes")]
    pub gating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Attachment>,
}

impl Check {
    pub fn new(name: impl Into<String>, reference: impl Into<String>, status: Status) -> Check {
        Check {
            name: name.into(),
            reference: reference.into(),
            status,
            witness: None,
            gating: true,
            data: None,
        }
    }

    /// Pass when the identity holds, fail with the witness otherwise.
    pub fn identity(name: impl Into<String>, reference: impl Into<String>, outcome: IdentityOutcome) -> Check {
        match outcome {
            Ok(None) => Check::new(name, reference, Status::Pass),
            Ok(Some(w)) => Check::new(name, reference, Status::Fail).with_witness(w),
            Err(e) => Check::new(name, reference, Status::Error).with_witness(e.to_string()),
        }
    }

    pub fn expect(name: impl Into<String>, reference: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Check {
        if ok {
            Check::new(name, reference, Status::Pass)
        } else {
            Check::new(name, reference, Status::Fail).with_witness(witness())
        }
    }

    pub fn error(name: impl Into<String>, reference: impl Into<String>, err: impl fmt::Display) -> Check {
        Check::new(name, reference, Status::Error).with_witness(err.to_string())
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }

    pub fn with_data(mut self, data: Attachment) -> Check {
        self.data = Some(data);
        self
    }

    pub fn diagnostic(mut self) -> Check {
        self.gating = false;
        self
    }

    /// Upgrades a pass to generic-pass.
    pub fn generic(mut self, generic: bool) -> Check {
        if generic && self.status == Status::Pass {
            self.status = Status::GenericPass;
        }
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<usize>,
}

/// Checks produced for one algebra / family combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub model: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub budgets: Budgets,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>, model: impl Into<String>) -> VerificationReport {
        VerificationReport {
            title: title.into(),
            model: model.into(),
            params: BTreeMap::new(),
            budgets: Budgets::default(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn gating(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.gating)
    }

    pub fn has_error(&self) -> bool {
        self.gating().any(|c| c.status == Status::Error)
    }

    pub fn has_failure(&self) -> bool {
        self.gating().any(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.gating().all(|c| c.status.is_ok())
    }

    /// Statuses of the gating checks by name, for comparing backends.
    pub fn outcome_map(&self) -> BTreeMap<String, Status> {
        self.gating().map(|c| (c.name.clone(), c.status)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_names() {
        let s = serde_json::to_string(&[Status::Pass, Status::GenericPass, Status::Fail, Status::Error]).unwrap();
        assert_eq!(s, r#"["pass","generic-pass","fail","error"]"#);
    }

    #[test]
    fn diagnostics_do_not_gate() {
        let mut r = VerificationReport::new("t", "m");
        r.push(Check::new("a", "x = 0", Status::Pass));
        r.push(Check::new("b", "y = 0", Status::Fail).diagnostic());
        assert!(r.passed());
        assert!(!r.has_failure());
        let back: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
