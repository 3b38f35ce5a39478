use serde::{Deserialize, Serialize};

use elie_core::electrical::{Status, VerificationReport};

use crate::config::RunConfig;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub checks: usize,
    pub pass: usize,
    pub generic_pass: usize,
    pub fail: usize,
    pub error: usize,
    /// Reported but not gating.
    pub diagnostic: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Summary {
        let mut s = Summary {
            reports: reports.len(),
            ..Summary::default()
        };
        for c in reports.iter().flat_map(|r| &r.checks) {
            s.checks += 1;
            if !c.gating {
                s.diagnostic += 1;
                continue;
            }
            match c.status {
                Status::Pass => s.pass += 1,
                Status::GenericPass => s.generic_pass += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }
}

/// Wall-clock time of one task, in microseconds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub report: usize,
    pub task: String,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
    /// Excluded from the deterministic body.
    #[serde(default)]
    pub timings: Vec<Timing>,
}

impl ReportDocument {
    pub fn new(config: RunConfig, reports: Vec<VerificationReport>, timings: Vec<Timing>) -> ReportDocument {
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            summary: Summary::of(&reports),
            reports,
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Everything except the timings; identical for identical runs.
    pub fn body(&self) -> String {
        let mut doc = self.clone();
        doc.timings.clear();
        doc.to_json()
    }

    /// 0 when every gating check passes, 2 on any error, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.summary.error > 0 {
            2
        } else if self.summary.fail > 0 || self.reports.iter().any(|r| !r.passed()) {
            1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use elie_core::electrical::Check;

    #[test]
    fn round_trip_and_exit_codes() {
        let mut r = VerificationReport::new("t", "m");
        r.push(Check::new("a", "x = 0", Status::Pass));
        r.push(Check::new("b", "y = 0", Status::GenericPass));
        let timing = Timing {
            report: 0,
            task: "a".into(),
            micros: 7,
        };
        let doc = ReportDocument::new(RunConfig::new("run"), vec![r.clone()], vec![timing]);
        let back: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.exit_code(), 0);
        assert!(!doc.body().contains("micros"));

        r.push(Check::new("c", "z = 0", Status::Fail));
        assert_eq!(ReportDocument::new(RunConfig::new("run"), vec![r.clone()], vec![]).exit_code(), 1);
        r.push(Check::new("d", "w = 0", Status::Error));
        assert_eq!(ReportDocument::new(RunConfig::new("run"), vec![r], vec![]).exit_code(), 2);
    }
}
