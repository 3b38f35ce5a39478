//! Verification driver: suites, configuration, and JSON reports.

pub mod cli;
pub mod config;
pub mod document;
pub mod params;
pub mod suites;

use thiserror::Error;

use elie_core::arith::ArithError;
use elie_core::cartan::CartanError;
use elie_core::electrical::{run_job_timed, Check, ElectricalError, Job, RunOptions, Task, VerificationReport};
use elie_core::lie::LieExpr;

pub use config::RunConfig;
pub use document::ReportDocument;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error(transparent)]
    Electrical(#[from] ElectricalError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// Runs jobs one after another (tasks inside a job run in parallel).
pub fn run_jobs(jobs: &[Job], opts: &RunOptions) -> (Vec<VerificationReport>, Vec<document::Timing>) {
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for job in jobs {
        let (report, times) = run_job_timed(job, opts);
        let idx = reports.len();
        timings.extend(times.into_iter().map(|(task, d)| document::Timing {
            report: idx,
            task,
            micros: d.as_micros() as u64,
        }));
        reports.push(report);
    }
    (reports, timings)
}

/// A report carrying a single error, for failures before any job runs.
pub fn error_report(title: &str, err: &CliError) -> VerificationReport {
    let mut r = VerificationReport::new(title, "none");
    r.push(Check::error("setup", "well-formed configuration", err));
    r
}

/// Breaks the first relation of the first job that has one: its left side
/// picks up an extra `e` term, as if a structure constant were wrong.
pub fn inject_fault(jobs: &mut [Job]) -> bool {
    for job in jobs {
        for task in &mut job.tasks {
            if let Task::Vanish { expr, name, .. } = task {
                let top = LieExpr::E(job.spec.gcm.rank() - 1);
                *expr = LieExpr::sum(vec![(1.into(), expr.clone()), (1.into(), top)]);
                name.push_str(" [fault injected]");
                return true;
            }
        }
    }
    false
}
