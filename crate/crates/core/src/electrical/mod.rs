//! Electrical generator families and the checks run on them.
//!
//! A check is described once, as a [`Task`] over [`LieExpr`] trees, and
//! evaluated in whichever backend a [`Job`] is run with. This keeps the
//! Kac-Moody engine and the matrix models interchangeable for every suite.

mod conjugation;
mod crosscheck;
mod decomposition;
mod edge;
mod family;
mod flatness;
mod form;
mod job;
mod min_cartan;
mod model;
mod recursion;
mod report;

use thiserror::Error;

use crate::arith::ArithError;
use crate::cartan::CartanError;
use crate::lie::LieError;

pub use conjugation::{ad_chain, conjugation_tasks, star_tasks, ConjugationScheme};
pub use crosscheck::crosscheck;
pub use decomposition::{sp_decomposition_tasks, sp_prime_params};
pub use edge::{edge_generators, edge_model, edge_models, EdgeModel, KindArgs};
pub use family::{vertex_generators, vertex_u, GeneratorFamily};
pub use flatness::{flatness_task, ideal_dimensions, FlatnessOptions};
pub use form::{describe_b, form_tasks, omega_form, sp_identification_task, symbolic_b, v_one};
pub use job::{run_job, run_job_timed, seed_for, Job, RunOptions, Task};
pub use min_cartan::{min_cartan_family, min_cartan_gcm};
pub use model::{height_span, km_height, AlgebraSpec, Backend, Model};
pub use recursion::{iterated_u, local_relation_tasks, recursion_tasks};
pub use report::{Attachment, Budgets, Check, Status, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectricalError {
    #[error("{0}")]
    Malformed(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
