use num_traits::One;

use super::{LieAlgebra, LieError};
use crate::arith::{factorial, Poly, Rational};

/// Symbolic element built from Chevalley generators; evaluated per backend.
#[derive(Clone, Debug, PartialEq)]
pub enum LieExpr {
    Zero,
    E(usize),
    F(usize),
    H(usize),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    Lin(Vec<(Poly, LieExpr)>),
    AdPow(Box<LieExpr>, usize, Box<LieExpr>),
    /// `sum_k s^k/k! (ad x)^k (y)`.
    AdExp(Poly, Box<LieExpr>, Box<LieExpr>),
    /// `sum_{m >= m0} c * s^(m+p) / (m+q)! * (ad x)^m (y)`, stopping at the
    /// first vanishing power; more than `max_terms` nonzero powers is an error.
    AdSeries {
        x: Box<LieExpr>,
        y: Box<LieExpr>,
        m0: usize,
        p: usize,
        q: usize,
        c: Poly,
        s: Poly,
        max_terms: usize,
    },
}

impl LieExpr {
    pub fn br(x: LieExpr, y: LieExpr) -> LieExpr {
        LieExpr::Bracket(Box::new(x), Box::new(y))
    }

    pub fn scaled(c: Poly, x: LieExpr) -> LieExpr {
        LieExpr::Lin(vec![(c, x)])
    }

    pub fn sum(terms: Vec<(Poly, LieExpr)>) -> LieExpr {
        LieExpr::Lin(terms)
    }

    pub fn ad_pow(x: LieExpr, k: usize, y: LieExpr) -> LieExpr {
        LieExpr::AdPow(Box::new(x), k, Box::new(y))
    }

    pub fn ad_exp(s: Poly, x: LieExpr, y: LieExpr) -> LieExpr {
        LieExpr::AdExp(s, Box::new(x), Box::new(y))
    }

    /// Applies `f` to every coefficient.
    pub fn map_polys(&self, f: &dyn Fn(&Poly) -> Poly) -> LieExpr {
        use LieExpr::*;
        match self {
            Zero | E(_) | F(_) | H(_) => self.clone(),
            Bracket(x, y) => LieExpr::br(x.map_polys(f), y.map_polys(f)),
            Lin(ts) => Lin(ts.iter().map(|(c, x)| (f(c), x.map_polys(f))).collect()),
            AdPow(x, k, y) => LieExpr::ad_pow(x.map_polys(f), *k, y.map_polys(f)),
            AdExp(s, x, y) => LieExpr::ad_exp(f(s), x.map_polys(f), y.map_polys(f)),
            AdSeries {
                x,
                y,
                m0,
                p,
                q,
                c,
                s,
                max_terms,
            } => AdSeries {
                x: Box::new(x.map_polys(f)),
                y: Box::new(y.map_polys(f)),
                m0: *m0,
                p: *p,
                q: *q,
                c: f(c),
                s: f(s),
                max_terms: *max_terms,
            },
        }
    }

    pub fn eval<A: LieAlgebra + ?Sized>(&self, alg: &A) -> Result<A::Elem, LieError> {
        use LieExpr::*;
        Ok(match self {
            Zero => alg.zero(),
            E(i) => alg.e(*i),
            F(i) => alg.f(*i),
            H(i) => alg.h(*i),
            Bracket(x, y) => alg.bracket(&x.eval(alg)?, &y.eval(alg)?)?,
            Lin(ts) => {
                let mut acc = alg.zero();
                for (c, x) in ts {
                    if !c.is_zero() {
                        acc = alg.add(&acc, &alg.scale(c, &x.eval(alg)?));
                    }
                }
                acc
            }
            AdPow(x, k, y) => alg.ad_pow(&x.eval(alg)?, *k, &y.eval(alg)?)?,
            AdExp(s, x, y) => alg.ad_exp(s, &x.eval(alg)?, &y.eval(alg)?)?,
            AdSeries {
                x,
                y,
                m0,
                p,
                q,
                c,
                s,
                max_terms,
            } => {
                let xv = x.eval(alg)?;
                let mut term = alg.ad_pow(&xv, *m0, &y.eval(alg)?)?;
                let mut acc = alg.zero();
                let mut m = *m0;
                let mut used = 0;
                while !alg.is_zero(&term) {
                    if used == *max_terms {
                        return Err(LieError::NonTerminating(*max_terms));
                    }
                    let coeff = (c * &s.pow((m + p) as u32))
                        .scale(&(Rational::one() / factorial(m + q)));
                    acc = alg.add(&acc, &alg.scale(&coeff, &term));
                    term = alg.bracket(&xv, &term)?;
                    m += 1;
                    used += 1;
                }
                acc
            }
        })
    }
}
