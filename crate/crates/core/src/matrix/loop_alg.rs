//! Untwisted affine `sl_n` as `sl_n[t, t^-1] + Qc` with the cocycle
//! `[x t^m, y t^k] = [x, y] t^(m+k) + m delta_{m+k,0} tr(xy) c`.

use std::collections::BTreeMap;
use std::fmt;

use super::PolyMatrix;
use crate::arith::Poly;
use crate::cartan::{builtin_gcm, CartanError, Family, Gcm};
use crate::lie::{LieAlgebra, LieError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopElement {
    pub coeffs: BTreeMap<i64, PolyMatrix>,
    pub central: Poly,
}

impl LoopElement {
    pub fn zero() -> LoopElement {
        LoopElement {
            coeffs: BTreeMap::new(),
            central: Poly::zero(),
        }
    }

    pub fn at(degree: i64, m: PolyMatrix) -> LoopElement {
        let mut x = LoopElement::zero();
        if !m.is_zero() {
            x.coeffs.insert(degree, m);
        }
        x
    }

    pub fn central(c: Poly) -> LoopElement {
        LoopElement {
            coeffs: BTreeMap::new(),
            central: c,
        }
    }

    fn push(&mut self, degree: i64, m: PolyMatrix) {
        let slot = match self.coeffs.remove(&degree) {
            Some(prev) => prev.add(&m),
            None => m,
        };
        if !slot.is_zero() {
            self.coeffs.insert(degree, slot);
        }
    }

    pub fn add(&self, other: &LoopElement) -> LoopElement {
        let mut out = self.clone();
        for (d, m) in &other.coeffs {
            out.push(*d, m.clone());
        }
        out.central = &out.central + &other.central;
        out
    }

    pub fn scale(&self, c: &Poly) -> LoopElement {
        let mut out = LoopElement::zero();
        for (d, m) in &self.coeffs {
            out.push(*d, m.scale(c));
        }
        out.central = &self.central * c;
        out
    }

    pub fn bracket(&self, other: &LoopElement) -> LoopElement {
        let mut out = LoopElement::zero();
        for (m, x) in &self.coeffs {
            for (k, y) in &other.coeffs {
                out.push(m + k, x.bracket(y));
                if m + k == 0 && *m != 0 {
                    let tr = x.mul(y).trace();
                    out.central = &out.central + &tr.scale(&crate::arith::rat(*m));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.central.is_zero()
    }
}

/// Coordinate of a loop element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LoopKey {
    Entry { degree: i64, row: usize, col: usize },
    Central,
}

impl fmt::Display for LoopKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopKey::Entry { degree, row, col } => {
                write!(f, "t^{degree} entry ({},{})", row + 1, col + 1)
            }
            LoopKey::Central => write!(f, "c"),
        }
    }
}

/// Affine `sl_n` with generators indexed `0..n`; index 0 is the affine node.
#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    pub n: usize,
    pub gcm: Gcm,
    pub e: Vec<LoopElement>,
    pub f: Vec<LoopElement>,
    pub h: Vec<LoopElement>,
}

/// `e_i = E_{i,i+1}`, `f_i = E_{i+1,i}` for `i = 1..n-1` at degree 0;
/// `e_0 = E_{n,1} t`, `f_0 = E_{1,n} t^-1`, `h_0 = E_{n,n} - E_{1,1} + c`.
pub fn affine_chevalley(n: usize) -> Result<LoopAlgebra, CartanError> {
    let gcm = builtin_gcm(Family::AffineA, n)?;
    let u = |r: usize, c: usize| PolyMatrix::unit(n, r - 1, c - 1);
    let mut e = vec![LoopElement::at(1, u(n, 1))];
    let mut f = vec![LoopElement::at(-1, u(1, n))];
    let mut h = vec![LoopElement::at(0, u(n, n).sub(&u(1, 1))).add(&LoopElement::central(Poly::one()))];
    for i in 1..n {
        e.push(LoopElement::at(0, u(i, i + 1)));
        f.push(LoopElement::at(0, u(i + 1, i)));
        h.push(LoopElement::at(0, u(i, i).sub(&u(i + 1, i + 1))));
    }
    Ok(LoopAlgebra { n, gcm, e, f, h })
}

impl LoopAlgebra {
    pub fn new(n: usize) -> Result<LoopAlgebra, CartanError> {
        affine_chevalley(n)
    }
}

impl LieAlgebra for LoopAlgebra {
    type Elem = LoopElement;
    type Key = LoopKey;

    fn describe(&self) -> String {
        format!("affine sl_{} loop model", self.n)
    }

    fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    fn e(&self, i: usize) -> LoopElement {
        self.e[i].clone()
    }

    fn f(&self, i: usize) -> LoopElement {
        self.f[i].clone()
    }

    fn h(&self, i: usize) -> LoopElement {
        self.h[i].clone()
    }

    fn zero(&self) -> LoopElement {
        LoopElement::zero()
    }

    fn add(&self, x: &LoopElement, y: &LoopElement) -> LoopElement {
        x.add(y)
    }

    fn scale(&self, c: &Poly, x: &LoopElement) -> LoopElement {
        x.scale(c)
    }

    fn bracket(&self, x: &LoopElement, y: &LoopElement) -> Result<LoopElement, LieError> {
        Ok(x.bracket(y))
    }

    fn components(&self, x: &LoopElement) -> Vec<(LoopKey, Poly)> {
        let mut out: Vec<(LoopKey, Poly)> = x
            .coeffs
            .iter()
            .flat_map(|(d, m)| {
                m.entries()
                    .map(|((row, col), p)| {
                        (
                            LoopKey::Entry {
                                degree: *d,
                                row,
                                col,
                            },
                            p.clone(),
                        )
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        if !x.central.is_zero() {
            out.push((LoopKey::Central, x.central.clone()));
        }
        out
    }

    fn map_coeffs(&self, x: &LoopElement, f: &dyn Fn(&Poly) -> Poly) -> LoopElement {
        let mut out = LoopElement::zero();
        for (d, m) in &x.coeffs {
            out.push(*d, m.map(f));
        }
        out.central = f(&x.central);
        out
    }

    fn root_of(&self, key: &LoopKey) -> Vec<i64> {
        let mut root = vec![0; self.n];
        if let LoopKey::Entry { degree, row, col } = *key {
            for r in root.iter_mut() {
                *r = degree;
            }
            // finite part: E_{r,c} has root alpha_r + ... + alpha_{c-1}
            let (lo, hi, s) = if row < col { (row, col, 1) } else { (col, row, -1) };
            for k in lo + 1..=hi {
                if k < self.n {
                    root[k] += s;
                }
            }
        }
        root
    }

    fn is_zero(&self, x: &LoopElement) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::chevalley_relations;

    #[test]
    fn e0_f0_gives_h0_with_central_term() {
        let alg = affine_chevalley(3).unwrap();
        let x = alg.e[0].bracket(&alg.f[0]);
        assert_eq!(x, alg.h[0]);
        assert!(x.central.is_one());
    }

    #[test]
    fn h0_on_e1() {
        let alg = affine_chevalley(3).unwrap();
        assert_eq!(alg.h[0].bracket(&alg.e[1]), alg.e[1].scale(&Poly::int(-1)));
    }

    #[test]
    fn relations_for_small_ranks() {
        for n in 2..=4 {
            let alg = affine_chevalley(n).unwrap();
            for (name, res) in chevalley_relations(&alg) {
                assert_eq!(res, Ok(None), "affine sl_{n}: {name}");
            }
        }
    }

    #[test]
    fn e0_is_in_degree_delta_minus_theta() {
        let alg = affine_chevalley(3).unwrap();
        let key = LoopKey::Entry { degree: 1, row: 2, col: 0 };
        assert_eq!(alg.root_of(&key), vec![1, 0, 0]);
        let key = LoopKey::Entry { degree: 0, row: 0, col: 2 };
        assert_eq!(alg.root_of(&key), vec![0, 1, 1]);
    }
}
