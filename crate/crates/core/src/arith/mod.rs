//! Exact coefficient arithmetic.

mod linalg;
mod poly;
mod rational;
mod var;

pub use linalg::{
    eval_matrix, ff_det, ff_kernel, ff_rank, random_assignment, rational_rank, specialized_ranks,
    Echelon, FfEchelon, SpecializedRank,
};
pub use poly::{Monomial, Poly, PolyOp, PolyRing};
pub use rational::{binomial, factorial, format_rational, parse_rational, rat, ratio, Rational};
pub use var::{natural_cmp, Var};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("parameter `{0}` is not in the declared parameter set")]
    ForeignParameter(String),
    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
