use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::model::{height_span, km_height, AlgebraSpec, Backend, Model};
use super::report::{Check, VerificationReport};
use crate::lie::{vanishes, IdentityOutcome, LieAlgebra, LieExpr};
use crate::with_model;

type CustomRun = Box<dyn Fn(&Model, u64) -> Vec<Check> + Send + Sync>;

/// One unit of verification, independent of the backend.
pub enum Task {
    /// `expr` must vanish.
    Vanish {
        name: String,
        reference: String,
        expr: LieExpr,
        gating: bool,
    },
    /// `expr - e_top` must have no component of positive height.
    Lower {
        name: String,
        reference: String,
        expr: LieExpr,
        top: usize,
    },
    /// Anything else; receives the model and a seed derived from the name.
    Custom {
        name: String,
        demand: usize,
        run: CustomRun,
    },
}

impl Task {
    pub fn vanish(name: impl Into<String>, reference: impl Into<String>, expr: LieExpr) -> Task {
        Task::Vanish {
            name: name.into(),
            reference: reference.into(),
            expr,
            gating: true,
        }
    }

    /// `lhs = rhs`.
    pub fn equal(name: impl Into<String>, reference: impl Into<String>, lhs: LieExpr, rhs: LieExpr) -> Task {
        Task::vanish(name, reference, LieExpr::sum(vec![(1.into(), lhs), ((-1).into(), rhs)]))
    }

    pub fn lower(name: impl Into<String>, reference: impl Into<String>, expr: LieExpr, top: usize) -> Task {
        Task::Lower {
            name: name.into(),
            reference: reference.into(),
            expr,
            top,
        }
    }

    pub fn custom(
        name: impl Into<String>,
        demand: usize,
        run: impl Fn(&Model, u64) -> Vec<Check> + Send + Sync + 'static,
    ) -> Task {
        Task::Custom {
            name: name.into(),
            demand,
            run: Box::new(run),
        }
    }

    /// Marks an identity as reported but not gating.
    pub fn diagnostic(mut self) -> Task {
        if let Task::Vanish { gating, .. } = &mut self {
            *gating = false;
        }
        self
    }

    pub fn name(&self) -> &str {
        match self {
            Task::Vanish { name, .. } | Task::Lower { name, .. } | Task::Custom { name, .. } => name,
        }
    }

    /// Static upper bound for the root heights this task touches.
    pub fn demand(&self) -> usize {
        match self {
            Task::Vanish { expr, .. } | Task::Lower { expr, .. } => height_span(expr),
            Task::Custom { demand, .. } => *demand,
        }
    }
}

/// A titled list of tasks over one algebra.
pub struct Job {
    pub title: String,
    pub spec: AlgebraSpec,
    pub params: BTreeMap<String, String>,
    pub filtration: Option<usize>,
    pub tasks: Vec<Task>,
}

impl Job {
    pub fn new(title: impl Into<String>, spec: AlgebraSpec) -> Job {
        Job {
            title: title.into(),
            spec,
            params: BTreeMap::new(),
            filtration: None,
            tasks: Vec::new(),
        }
    }

    pub fn with_params(mut self, params: BTreeMap<String, String>) -> Job {
        self.params = params;
        self
    }

    pub fn with_tasks(mut self, tasks: impl IntoIterator<Item = Task>) -> Job {
        self.tasks.extend(tasks);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub backend: Backend,
    /// Overrides the computed Kac-Moody height budget.
    pub height: Option<usize>,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            backend: Backend::Auto,
            height: None,
            seed: 0,
            parallel: true,
        }
    }
}

/// Per-task seed, so results do not depend on execution order.
pub fn seed_for(seed: u64, name: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn lower<A: LieAlgebra>(alg: &A, expr: &LieExpr, top: usize) -> IdentityOutcome {
    let d = alg.sub(&expr.eval(alg)?, &alg.e(top));
    Ok(alg
        .components(&d)
        .into_iter()
        .find(|(k, _)| alg.root_of(k).iter().sum::<i64>() > 0)
        .map(|(k, p)| format!("{k}: {p}")))
}

fn run_task(model: &Model, task: &Task, seed: u64) -> Vec<Check> {
    match task {
        Task::Vanish {
            name,
            reference,
            expr,
            gating,
        } => {
            let outcome = with_model!(model, alg => vanishes(alg, expr.eval(alg)));
            let c = Check::identity(name, reference, outcome);
            vec![if *gating { c } else { c.diagnostic() }]
        }
        Task::Lower {
            name,
            reference,
            expr,
            top,
        } => {
            let outcome = with_model!(model, alg => lower(alg, expr, *top));
            vec![Check::identity(name, reference, outcome)]
        }
        Task::Custom { name, run, .. } => run(model, seed_for(seed, name)),
    }
}

pub fn run_job(job: &Job, opts: &RunOptions) -> VerificationReport {
    run_job_timed(job, opts).0
}

/// Like [`run_job`], also returning the wall-clock time of each task.
pub fn run_job_timed(job: &Job, opts: &RunOptions) -> (VerificationReport, Vec<(String, Duration)>) {
    let demand = job.tasks.iter().map(Task::demand).max().unwrap_or(1);
    let height = opts.height.unwrap_or_else(|| km_height(&job.spec.gcm, demand));
    let mut report = VerificationReport::new(job.title.clone(), job.spec.name());
    report.params = job.params.clone();
    report.budgets.filtration = job.filtration;
    let start = Instant::now();
    let model = match Model::build(&job.spec, opts.backend, height) {
        Ok(m) => m,
        Err(e) => {
            report.push(Check::error("model", "construct the algebra", e));
            return (report, vec![("model".into(), start.elapsed())]);
        }
    };
    report.model = model.describe();
    report.budgets.height = model.height_budget();
    let mut timings = vec![("model".to_string(), start.elapsed())];
    let seed = opts.seed;
    let run = |t: &Task| {
        let start = Instant::now();
        let checks = run_task(&model, t, seed);
        (checks, (t.name().to_string(), start.elapsed()))
    };
    let results: Vec<_> = if opts.parallel {
        job.tasks.par_iter().map(run).collect()
    } else {
        job.tasks.iter().map(run).collect()
    };
    for (checks, timing) in results {
        report.checks.extend(checks);
        timings.push(timing);
    }
    (report, timings)
}
