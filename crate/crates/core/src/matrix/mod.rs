//! Concrete matrix realizations: classical Chevalley matrices and the loop
//! realization of untwisted affine `sl_n`.

mod chevalley;
mod loop_alg;
mod poly_matrix;

pub use chevalley::{chevalley, ChevalleySet, Entry, MatrixAlgebra};
pub use loop_alg::{affine_chevalley, LoopAlgebra, LoopElement, LoopKey};
pub use poly_matrix::{std_rep_action, PolyMatrix};
