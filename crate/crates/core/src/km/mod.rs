//! Height-truncated Kac-Moody algebras for arbitrary generalized Cartan
//! matrices.

mod element;
mod model;
mod words;

pub use element::{KMElement, KmAlgebra, KmKey};
pub use model::{display_content, Content, KmModel, DEFAULT_SCALE_GUARD};
pub use words::{free_lie_dim, is_lyndon, lyndon_words, standard_factorization};
