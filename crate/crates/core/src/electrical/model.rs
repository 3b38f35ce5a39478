use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ElectricalError;
use crate::cartan::{builtin_gcm, highest_root_height, Family, Gcm};
use crate::km::KmAlgebra;
use crate::lie::LieExpr;
use crate::matrix::{LoopAlgebra, MatrixAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Matrix,
    Km,
    Auto,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Matrix => "matrix",
            Backend::Km => "km",
            Backend::Auto => "auto",
        })
    }
}

impl FromStr for Backend {
    type Err = ElectricalError;

    fn from_str(s: &str) -> Result<Backend, ElectricalError> {
        match s.to_ascii_lowercase().as_str() {
            "matrix" => Ok(Backend::Matrix),
            "km" => Ok(Backend::Km),
            "auto" => Ok(Backend::Auto),
            _ => Err(ElectricalError::Malformed(format!("unknown backend {s:?}"))),
        }
    }
}

/// Which algebra to build: a built-in family or an explicit GCM.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: Option<(Family, usize)>,
    pub gcm: Gcm,
}

impl AlgebraSpec {
    pub fn builtin(family: Family, rank: usize) -> Result<AlgebraSpec, ElectricalError> {
        let gcm = builtin_gcm(family, rank)?;
        Ok(AlgebraSpec {
            family: Some((family, gcm.rank())),
            gcm,
        })
    }

    pub fn custom(gcm: Gcm) -> AlgebraSpec {
        AlgebraSpec { family: None, gcm }
    }

    pub fn name(&self) -> String {
        match self.family {
            Some((Family::G, _)) | Some((Family::F, _)) | Some((Family::Rank2(..), _)) | Some((Family::AffineD4, _)) => {
                self.family.unwrap().0.to_string()
            }
            Some((f, r)) => format!("{f}{r}"),
            None => format!("GCM {}", self.gcm),
        }
    }

    /// Backend chosen by `auto`: matrices for A-D, the loop model for affine
    /// A, the Kac-Moody engine for everything else.
    pub fn resolve(&self, backend: Backend) -> Result<Backend, ElectricalError> {
        let concrete = matches!(self.family, Some((f, _)) if f.has_matrix_model() || f == Family::AffineA);
        match backend {
            Backend::Auto => Ok(if concrete { Backend::Matrix } else { Backend::Km }),
            Backend::Matrix if !concrete => Err(ElectricalError::Malformed(format!(
                "no matrix model for {}",
                self.name()
            ))),
            b => Ok(b),
        }
    }
}

/// A concrete model behind the common Lie algebra interface.
#[derive(Debug)]
pub enum Model {
    Matrix(MatrixAlgebra),
    Loop(LoopAlgebra),
    Km(KmAlgebra),
}

/// Runs `$body` with `$alg` bound to the concrete model.
#[macro_export]
macro_rules! with_model {
    ($model:expr, $alg:ident => $body:expr) => {
        match $model {
            $crate::electrical::Model::Matrix($alg) => $body,
            $crate::electrical::Model::Loop($alg) => $body,
            $crate::electrical::Model::Km($alg) => $body,
        }
    };
}

impl Model {
    /// `height` is the Kac-Moody budget; ignored by the concrete models.
    pub fn build(spec: &AlgebraSpec, backend: Backend, height: usize) -> Result<Model, ElectricalError> {
        match spec.resolve(backend)? {
            Backend::Matrix => match spec.family {
                Some((Family::AffineA, n)) => Ok(Model::Loop(LoopAlgebra::new(n)?)),
                Some((f, r)) => Ok(Model::Matrix(MatrixAlgebra::new(f, r)?)),
                None => unreachable!("resolve rejects custom GCMs for matrices"),
            },
            _ => Ok(Model::Km(KmAlgebra::new(&spec.gcm, height)?)),
        }
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            Model::Matrix(_) => "matrix",
            Model::Loop(_) => "loop",
            Model::Km(_) => "km",
        }
    }

    pub fn height_budget(&self) -> Option<usize> {
        match self {
            Model::Km(k) => Some(k.model().height()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        use crate::lie::LieAlgebra;
        with_model!(self, a => a.describe())
    }
}

/// Allowance for exponential series when estimating heights statically.
const EXP_ALLOWANCE: usize = 4;

/// Upper bound for the absolute root height of the components of `x`.
pub fn height_span(x: &LieExpr) -> usize {
    use LieExpr::*;
    match x {
        Zero | H(_) => 0,
        E(_) | F(_) => 1,
        Bracket(a, b) => height_span(a) + height_span(b),
        Lin(ts) => ts.iter().map(|(_, t)| height_span(t)).max().unwrap_or(0),
        AdPow(a, k, b) => k * height_span(a) + height_span(b),
        AdExp(_, a, b) => EXP_ALLOWANCE * height_span(a) + height_span(b),
        AdSeries { x, y, .. } => EXP_ALLOWANCE * height_span(x) + height_span(y),
    }
}

/// Kac-Moody budget for a computation whose static demand is `demand`. For
/// finite types one level above the highest root suffices for everything,
/// because every content above it is provably zero.
pub fn km_height(gcm: &Gcm, demand: usize) -> usize {
    match highest_root_height(gcm) {
        Some(h) => (h + 1).min(demand.max(2)),
        None => demand.max(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    #[test]
    fn auto_backend() {
        let a3 = AlgebraSpec::builtin(Family::A, 3).unwrap();
        assert_eq!(a3.resolve(Backend::Auto).unwrap(), Backend::Matrix);
        let g2 = AlgebraSpec::builtin(Family::G, 2).unwrap();
        assert_eq!(g2.resolve(Backend::Auto).unwrap(), Backend::Km);
        assert!(g2.resolve(Backend::Matrix).is_err());
        let aff = AlgebraSpec::builtin(Family::AffineA, 3).unwrap();
        assert_eq!(Model::build(&aff, Backend::Auto, 0).unwrap().backend_name(), "loop");
    }

    #[test]
    fn spans() {
        let u = LieExpr::sum(vec![(Poly::one(), LieExpr::E(0)), (Poly::var("a1"), LieExpr::H(0))]);
        assert_eq!(height_span(&LieExpr::ad_pow(u.clone(), 2, LieExpr::F(1))), 3);
        assert_eq!(height_span(&LieExpr::br(LieExpr::F(0), LieExpr::br(LieExpr::F(1), LieExpr::F(2)))), 3);
    }
}
