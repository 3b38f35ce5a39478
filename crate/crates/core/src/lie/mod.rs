//! Backend-independent Lie algebra interface.
//!
//! Every model (classical matrices, the affine loop algebra, the truncated
//! Kac-Moody engine) implements [`LieAlgebra`]. Generator families are
//! described once as [`LieExpr`] trees and evaluated in whichever backend is
//! selected at run time.

mod closure;
mod expr;

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::arith::{factorial, ArithError, Poly, Rational};
use crate::cartan::Gcm;

pub use closure::{closure_exact, subalgebra_closure, ClosureResult, SparseEchelon};
pub use expr::LieExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("height budget {budget} exceeded at root {root} (height {height})")]
    HeightExceeded {
        root: String,
        height: usize,
        budget: usize,
    },
    #[error("free Lie component at {root} has dimension {dim}, above the scale guard {guard}")]
    ScaleGuard { root: String, dim: usize, guard: usize },
    #[error("ad-exponential series did not terminate after {0} terms")]
    NonTerminating(usize),
    #[error("non-generic specialization: {0}")]
    NonGeneric(String),
    #[error("closure did not stabilize within filtration degree {0}")]
    NoStabilization(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A Lie algebra over `Q[params]` with distinguished Chevalley generators.
pub trait LieAlgebra: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    /// Coordinate label; `components` lists coefficients against these.
    type Key: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync;

    fn describe(&self) -> String;
    fn gcm(&self) -> &Gcm;
    fn e(&self, i: usize) -> Self::Elem;
    fn f(&self, i: usize) -> Self::Elem;
    fn h(&self, i: usize) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Poly, x: &Self::Elem) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, LieError>;
    /// Nonzero coordinates in a canonical order.
    fn components(&self, x: &Self::Elem) -> Vec<(Self::Key, Poly)>;
    fn map_coeffs(&self, x: &Self::Elem, f: &dyn Fn(&Poly) -> Poly) -> Self::Elem;
    /// Root-lattice degree of a coordinate (zero for the Cartan part).
    fn root_of(&self, key: &Self::Key) -> Vec<i64>;
    /// Height budget of a truncated model.
    fn height_budget(&self) -> Option<usize> {
        None
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.components(x).is_empty()
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.scale(&Poly::int(-1), y))
    }

    fn lin(&self, terms: &[(Poly, Self::Elem)]) -> Self::Elem {
        terms
            .iter()
            .fold(self.zero(), |acc, (c, x)| self.add(&acc, &self.scale(c, x)))
    }

    /// `(ad x)^k (y)`.
    fn ad_pow(&self, x: &Self::Elem, k: usize, y: &Self::Elem) -> Result<Self::Elem, LieError> {
        let mut acc = y.clone();
        for _ in 0..k {
            if self.is_zero(&acc) {
                break;
            }
            acc = self.bracket(x, &acc)?;
        }
        Ok(acc)
    }

    /// `sum_k s^k/k! (ad x)^k (y)`; `ad x` must be nilpotent on `y`.
    fn ad_exp(&self, s: &Poly, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, LieError> {
        const MAX_TERMS: usize = 64;
        let mut acc = y.clone();
        let mut term = y.clone();
        for k in 1..=MAX_TERMS {
            term = self.bracket(x, &term)?;
            if self.is_zero(&term) {
                return Ok(acc);
            }
            let c = s.pow(k as u32).scale(&(Rational::one() / factorial(k)));
            acc = self.add(&acc, &self.scale(&c, &term));
        }
        Err(LieError::NonTerminating(MAX_TERMS))
    }

    /// The first nonzero coordinate, rendered for failure reports.
    fn witness(&self, x: &Self::Elem) -> Option<String> {
        self.components(x)
            .into_iter()
            .next()
            .map(|(k, p)| format!("{k}: {p}"))
    }
}

/// Multidegree rendered as `(1,0,2)`.
pub fn format_root(r: &[i64]) -> String {
    let parts: Vec<String> = r.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Outcome of an identity: `Ok(None)` when it holds, `Ok(Some(witness))`
/// with the first nonzero coordinate of the difference otherwise.
pub type IdentityOutcome = Result<Option<String>, LieError>;

/// Checks that `lhs` vanishes.
pub fn vanishes<A: LieAlgebra + ?Sized>(alg: &A, lhs: Result<A::Elem, LieError>) -> IdentityOutcome {
    lhs.map(|x| alg.witness(&x))
}

/// Chevalley and Serre relations of the generators, one entry per identity.
pub fn chevalley_relations<A: LieAlgebra>(alg: &A) -> Vec<(String, IdentityOutcome)> {
    let g = alg.gcm().clone();
    let n = g.rank();
    let l = |i: usize| g.label(i);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ef = alg.bracket(&alg.e(i), &alg.f(j)).map(|x| {
                if i == j {
                    alg.sub(&x, &alg.h(i))
                } else {
                    x
                }
            });
            out.push((format!("[e{},f{}]", l(i), l(j)), vanishes(alg, ef)));
            let a = Poly::int(g.a(i, j));
            let he = alg
                .bracket(&alg.h(i), &alg.e(j))
                .map(|x| alg.sub(&x, &alg.scale(&a, &alg.e(j))));
            out.push((format!("[h{},e{}]", l(i), l(j)), vanishes(alg, he)));
            let hf = alg
                .bracket(&alg.h(i), &alg.f(j))
                .map(|x| alg.add(&x, &alg.scale(&a, &alg.f(j))));
            out.push((format!("[h{},f{}]", l(i), l(j)), vanishes(alg, hf)));
            out.push((
                format!("[h{},h{}]", l(i), l(j)),
                vanishes(alg, alg.bracket(&alg.h(i), &alg.h(j))),
            ));
            if i != j {
                let k = (1 - g.a(i, j)) as usize;
                out.push((
                    format!("serre e{} e{}", l(i), l(j)),
                    vanishes(alg, alg.ad_pow(&alg.e(i), k, &alg.e(j))),
                ));
                out.push((
                    format!("serre f{} f{}", l(i), l(j)),
                    vanishes(alg, alg.ad_pow(&alg.f(i), k, &alg.f(j))),
                ));
            }
        }
    }
    out
}
