//! Argument parsing and command dispatch.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};

use elie_core::cartan::{Family, Gcm, ParamFamily};
use elie_core::electrical::{
    conjugation_tasks, crosscheck, describe_b, edge_generators, form_tasks, sp_decomposition_tasks,
    sp_identification_task, symbolic_b, vertex_generators, AlgebraSpec, Backend, ConjugationScheme,
    FlatnessOptions, GeneratorFamily, Job, KindArgs, RunOptions,
};
use elie_core::arith::Poly;

use crate::config::{AlgebraSelector, BudgetConfig, ParamMode, RunConfig};
use crate::document::ReportDocument;
use crate::suites::{flatness_job, relation_job, suite, suites};
use crate::{error_report, inject_fault, params, run_jobs, CliError};

#[derive(Parser, Debug)]
#[command(name = "elie", version, about = "Exact verification of electrical Lie algebra identities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// matrix, km or auto
    #[arg(long, global = true, default_value = "auto")]
    pub backend: Backend,
    /// Seed for generic specializations
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Kac-Moody height budget
    #[arg(long, global = true, env = "ELIE_HEIGHT_BUDGET")]
    pub height: Option<usize>,
    /// Parameter values: inline JSON or a file, values as integers or "p/q"
    #[arg(long, global = true, conflicts_with = "symbolic")]
    pub params: Option<String>,
    /// Keep parameters symbolic (the default)
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Run tasks one at a time
    #[arg(long, global = true)]
    pub sequential: bool,
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Algebra {
    /// A, B, C, D, E, F, G, AFFINE_A, AFFINE_D4 or RANK2(p,q)
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Text GCM: the rank on the first line, then one row per line
    #[arg(long, conflicts_with = "family")]
    pub gcm_file: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Vertex,
    Edge,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Chain,
    MiddleFirst,
    MiddleLast,
    Conical,
    Peacock,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// Edge model tag, e.g. TYPE_A_ROOT_2, C_CHAIN, CONICAL
    #[arg(long)]
    pub kind: Option<String>,
    /// Root vertex label
    #[arg(long)]
    pub root: Option<usize>,
    /// Root leaves (labels) for PEACOCK
    #[arg(long, value_delimiter = ',')]
    pub j_plus: Vec<usize>,
    /// Chain length for MIN_CARTAN
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the named suites
    Suites,
    /// Run named suites
    Run {
        names: Vec<String>,
        #[arg(long, conflicts_with = "names")]
        all: bool,
    },
    /// Deformed Serre relations of a generator family
    Verify {
        model: Model,
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Filtered dimensions of the generated subalgebra against the undeformed one
    Flatness {
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        family: FamilyArgs,
        /// Filtration bound
        #[arg(long)]
        filtration: Option<usize>,
    },
    /// The invariant form on sl_n
    Form {
        #[arg(long)]
        n: usize,
    },
    /// Conjugation of vertex generators into edge form
    Conjugate {
        #[arg(long, value_enum, default_value = "chain")]
        scheme: Scheme,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Splitting of the sp_2n edge model
    Decompose {
        #[arg(long)]
        n: usize,
    },
    /// Kac-Moody engine vs matrix model on random brackets
    Crosscheck {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
}

fn selector(a: &Algebra) -> AlgebraSelector {
    AlgebraSelector {
        family: a.family.map(|f| f.to_string()),
        rank: a.rank,
        gcm_file: a.gcm_file.clone(),
    }
}

fn algebra_spec(a: &Algebra) -> Result<AlgebraSpec, CliError> {
    match (&a.gcm_file, a.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Ok(AlgebraSpec::custom(Gcm::parse_text(&text)?))
        }
        (None, Some(f)) => Ok(AlgebraSpec::builtin(f, a.rank.unwrap_or(0))?),
        (None, None) => Err(CliError::Config("select an algebra with --family/--rank or --gcm-file".into())),
    }
}

fn positions(gcm: &Gcm, labels: &[usize]) -> Result<Vec<usize>, CliError> {
    Ok(labels.iter().map(|&l| gcm.index_of(l)).collect::<Result<_, _>>()?)
}

fn kind_args(gcm: &Gcm, f: &FamilyArgs) -> Result<KindArgs, CliError> {
    Ok(KindArgs {
        root: f.root.map(|l| gcm.index_of(l)).transpose()?,
        j_plus: positions(gcm, &f.j_plus)?,
        r: f.r,
    })
}

fn build_family(model: Model, spec: &AlgebraSpec, f: &FamilyArgs) -> Result<GeneratorFamily, CliError> {
    let gcm = &spec.gcm;
    match model {
        Model::Vertex => Ok(vertex_generators(gcm, &ParamFamily::symbolic_vertex(gcm))),
        Model::Edge => {
            let tag = f
                .kind
                .as_deref()
                .ok_or_else(|| CliError::Config("edge models need --kind".into()))?;
            Ok(edge_generators(tag, gcm, None, &kind_args(gcm, f)?)?)
        }
    }
}

fn specialize(fam: GeneratorFamily, mode: &ParamMode) -> Result<GeneratorFamily, CliError> {
    match mode {
        ParamMode::Symbolic => Ok(fam),
        ParamMode::Assignment { values } => params::apply(&fam, values),
    }
}

/// Parameters given to commands without a generator family must be `b`'s.
fn chain_b(n: usize, mode: &ParamMode) -> Result<Vec<Poly>, CliError> {
    let b = symbolic_b(n);
    let ParamMode::Assignment { values } = mode else {
        return Ok(b);
    };
    let names: Vec<String> = b.iter().map(|p| p.to_string()).collect();
    let mut out = b.clone();
    for (k, v) in values {
        let i = names
            .iter()
            .position(|n| n == k)
            .ok_or_else(|| elie_core::arith::ArithError::ForeignParameter(k.clone()))?;
        out[i] = Poly::constant(elie_core::arith::parse_rational(v)?);
    }
    Ok(out)
}

fn scheme(s: Scheme, n: Option<usize>, a: &Algebra, f: &FamilyArgs) -> Result<ConjugationScheme, CliError> {
    let root = |spec: &AlgebraSpec| -> Result<usize, CliError> {
        let l = f.root.ok_or_else(|| CliError::Config("this scheme needs --root".into()))?;
        Ok(spec.gcm.index_of(l)?)
    };
    Ok(match s {
        Scheme::Chain => ConjugationScheme::Chain {
            n: n.ok_or_else(|| CliError::Config("the chain scheme needs --n".into()))?,
        },
        Scheme::MiddleFirst => ConjugationScheme::MiddleFirst,
        Scheme::MiddleLast => ConjugationScheme::MiddleLast,
        Scheme::Conical => {
            let spec = algebra_spec(a)?;
            ConjugationScheme::Conical { root: root(&spec)?, spec }
        }
        Scheme::Peacock => {
            let spec = algebra_spec(a)?;
            ConjugationScheme::Peacock {
                root: root(&spec)?,
                j_plus: positions(&spec.gcm, &f.j_plus)?,
                spec,
            }
        }
    })
}

/// Config echo for a parsed command line.
pub fn run_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let g = &cli.global;
    let mut cfg = RunConfig::new(match &cli.command {
        Command::Suites => "suites",
        Command::Run { .. } => "run",
        Command::Verify { model: Model::Vertex, .. } => "verify vertex",
        Command::Verify { model: Model::Edge, .. } => "verify edge",
        Command::Flatness { .. } => "flatness",
        Command::Form { .. } => "form",
        Command::Conjugate { .. } => "conjugate",
        Command::Decompose { .. } => "decompose",
        Command::Crosscheck { .. } => "crosscheck",
    });
    cfg.backend = g.backend;
    cfg.seed = g.seed;
    cfg.out = g.out.clone();
    cfg.budgets = BudgetConfig {
        height: g.height,
        ..BudgetConfig::default()
    };
    if let Some(src) = &g.params {
        cfg.params = ParamMode::Assignment {
            values: params::parse_assignment(src)?,
        };
    }
    match &cli.command {
        Command::Run { names, all } => {
            cfg.suites = if *all {
                suites().iter().map(|s| s.name().to_string()).collect()
            } else {
                names.clone()
            };
        }
        Command::Verify { algebra, .. } | Command::Conjugate { algebra, .. } | Command::Crosscheck { algebra, .. } => {
            cfg.algebra = selector(algebra);
        }
        Command::Flatness { algebra, filtration, .. } => {
            cfg.algebra = selector(algebra);
            cfg.budgets.filtration = *filtration;
        }
        _ => {}
    }
    Ok(cfg)
}

fn jobs_for(cli: &Cli, cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    Ok(match &cli.command {
        Command::Suites => Vec::new(),
        Command::Run { .. } => {
            let mut jobs = Vec::new();
            for name in &cfg.suites {
                let s = suite(name).ok_or_else(|| CliError::Config(format!("unknown suite {name:?}")))?;
                jobs.extend(s.jobs()?);
            }
            jobs
        }
        Command::Verify { model, algebra, family } => {
            let spec = algebra_spec(algebra)?;
            let fam = specialize(build_family(*model, &spec, family)?, &cfg.params)?;
            let title = format!("{} relations in {}", fam.name, spec.name());
            vec![relation_job(title, spec, &fam)]
        }
        Command::Flatness { algebra, family, filtration } => {
            let spec = algebra_spec(algebra)?;
            let model = if family.kind.is_some() { Model::Edge } else { Model::Vertex };
            let fam = specialize(build_family(model, &spec, family)?, &cfg.params)?;
            let mut opts = if spec.family.map(|f| f.0) == Some(Family::AffineA) {
                FlatnessOptions::affine()
            } else {
                FlatnessOptions::default()
            };
            if let Some(d) = filtration {
                opts.max_degree = *d;
            }
            vec![flatness_job(spec, &fam, opts)]
        }
        Command::Form { n } => {
            let b = chain_b(*n, &cfg.params)?;
            let mut jobs = vec![Job::new(format!("form on sl_{n}"), AlgebraSpec::builtin(Family::A, n - 1)?)
                .with_params(describe_b(&b))
                .with_tasks(form_tasks(*n, &b)?)];
            if matches!(cfg.params, ParamMode::Symbolic) {
                jobs.push(
                    Job::new(format!("symplectic identification for sl_{n}"), AlgebraSpec::builtin(Family::A, n - 1)?)
                        .with_tasks([sp_identification_task(*n)]),
                );
            }
            jobs
        }
        Command::Conjugate { scheme: s, n, algebra, family } => {
            let sc = scheme(*s, *n, algebra, family)?;
            vec![Job::new(sc.title(), sc.spec()?)
                .with_params(sc.params())
                .with_tasks(conjugation_tasks(&sc)?)]
        }
        Command::Decompose { n } => {
            let b = chain_b(n + 1, &cfg.params)?;
            vec![Job::new(format!("decomposition of sp_{}", 2 * n), AlgebraSpec::builtin(Family::C, *n)?)
                .with_params(describe_b(&b))
                .with_tasks(sp_decomposition_tasks(*n, &b)?)]
        }
        Command::Crosscheck { .. } => Vec::new(),
    })
}

/// Runs a parsed command line to a report document.
pub fn execute(cli: &Cli) -> ReportDocument {
    let cfg = match run_config(cli) {
        Ok(c) => c,
        Err(e) => return ReportDocument::new(RunConfig::new("invalid"), vec![error_report("configuration", &e)], vec![]),
    };
    let opts = RunOptions {
        backend: cli.global.backend,
        height: cli.global.height,
        seed: cli.global.seed,
        parallel: !cli.global.sequential,
    };
    if let Command::Crosscheck { algebra, pairs } = &cli.command {
        let family = algebra.family.unwrap_or(Family::A);
        let rank = algebra.rank.unwrap_or(3);
        let report = crosscheck(family, rank, *pairs, cli.global.seed)
            .unwrap_or_else(|e| error_report("crosscheck", &e.into()));
        return ReportDocument::new(cfg, vec![report], vec![]);
    }
    let mut jobs = match jobs_for(cli, &cfg) {
        Ok(j) => j,
        Err(e) => return ReportDocument::new(cfg, vec![error_report("setup", &e)], vec![]),
    };
    if cli.global.inject_fault {
        inject_fault(&mut jobs);
    }
    let (reports, timings) = run_jobs(&jobs, &opts);
    ReportDocument::new(cfg, reports, timings)
}

/// Entry point of the binary; returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    if let Command::Suites = cli.command {
        for s in suites() {
            println!("{:<16} {}", s.name(), s.reference());
        }
        return 0;
    }
    let doc = execute(&cli);
    for r in &doc.reports {
        let bad: Vec<_> = r.checks.iter().filter(|c| c.gating && !c.status.is_ok()).collect();
        let state = if r.passed() { "ok" } else { "FAILED" };
        eprintln!("{state:>6}  {} [{}] {} checks", r.title, r.model, r.checks.len());
        for c in bad {
            eprintln!("        {} {}: {}", c.status, c.name, c.witness.as_deref().unwrap_or(""));
        }
    }
    let s = &doc.summary;
    eprintln!(
        "{} reports, {} checks: {} pass, {} generic-pass, {} fail, {} error, {} diagnostic",
        s.reports, s.checks, s.pass, s.generic_pass, s.fail, s.error, s.diagnostic
    );
    let json = doc.to_json();
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = fs::write(path, json) {
                eprintln!("cannot write {path}: {e}");
                return 2;
            }
        }
        None => println!("{json}"),
    }
    doc.exit_code()
}
