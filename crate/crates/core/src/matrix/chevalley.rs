//! Chevalley generators of the classical Lie algebras in their defining
//! representations.
//!
//! With `E_{r,c}` the elementary matrices (1-based) and `N` the matrix size:
//!
//! * `sl_{n+1}`: `e_i = E_{i,i+1}`.
//! * `so_{2n+1}`: `e_i = E_{i,i+1} - E_{N-i,N+1-i}` for `i < n`,
//!   `e_n = E_{n,n+1} - E_{n+1,n+2}`.
//! * `sp_{2n}`: `e_i = E_{i,i+1} - E_{N-i,N+1-i}` for `i < n`, `e_n = E_{n,n+1}`.
//! * `so_{2n}`: as `sp_{2n}` for `i < n`, `e_n = E_{n-1,n+1} - E_{n,n+2}`.
//!
//! In every case `f_i = c_i e_i^T` and `h_i = [e_i, f_i]`, with `c_i` chosen
//! so that `[h_i, e_i] = 2 e_i`. All `e_i` are strictly upper triangular.

use num_traits::{One, Zero};

use super::PolyMatrix;
use crate::arith::{rat, Poly, Rational};
use crate::cartan::{builtin_gcm, CartanError, Family, Gcm};
use crate::lie::{LieAlgebra, LieError};

/// `e_i, f_i, h_i` for a classical family.
#[derive(Clone, Debug)]
pub struct ChevalleySet {
    pub family: Family,
    pub gcm: Gcm,
    pub e: Vec<PolyMatrix>,
    pub f: Vec<PolyMatrix>,
    pub h: Vec<PolyMatrix>,
}

fn signed_units(n: usize, terms: &[(usize, usize, i64)]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(n);
    for &(r, c, s) in terms {
        m.set(r - 1, c - 1, Poly::int(s));
    }
    m
}

pub fn chevalley(family: Family, rank: usize) -> Result<ChevalleySet, CartanError> {
    let bad = || CartanError::InvalidRank {
        family: family.to_string(),
        rank,
    };
    let n = rank;
    let e: Vec<PolyMatrix> = match family {
        Family::A => {
            if n < 1 {
                return Err(bad());
            }
            let size = n + 1;
            (1..=n).map(|i| signed_units(size, &[(i, i + 1, 1)])).collect()
        }
        Family::B => {
            if n < 2 {
                return Err(bad());
            }
            let size = 2 * n + 1;
            let mut e: Vec<PolyMatrix> = (1..n)
                .map(|i| signed_units(size, &[(i, i + 1, 1), (size - i, size + 1 - i, -1)]))
                .collect();
            e.push(signed_units(size, &[(n, n + 1, 1), (n + 1, n + 2, -1)]));
            e
        }
        Family::C | Family::D => {
            if n < 2 || (family == Family::D && n < 3) {
                return Err(bad());
            }
            let size = 2 * n;
            let mut e: Vec<PolyMatrix> = (1..n)
                .map(|i| signed_units(size, &[(i, i + 1, 1), (size - i, size + 1 - i, -1)]))
                .collect();
            if family == Family::C {
                e.push(signed_units(size, &[(n, n + 1, 1)]));
            } else {
                e.push(signed_units(size, &[(n - 1, n + 1, 1), (n, n + 2, -1)]));
            }
            e
        }
        _ => {
            return Err(CartanError::Invalid(format!(
                "no classical matrix model for family {family}"
            )))
        }
    };
    let mut f = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for ei in &e {
        let et = ei.transpose();
        let h0 = ei.bracket(&et);
        let lam = eigen_scalar(&h0.bracket(ei), ei);
        let c = Poly::constant(rat(2) / lam);
        f.push(et.scale(&c));
        h.push(h0.scale(&c));
    }
    Ok(ChevalleySet {
        family,
        gcm: builtin_gcm(family, rank)?,
        e,
        f,
        h,
    })
}

/// `lambda` with `x = lambda * y`, read off the first nonzero entry of `y`.
fn eigen_scalar(x: &PolyMatrix, y: &PolyMatrix) -> Rational {
    let ((r, c), p) = y.entries().next().expect("nonzero generator");
    x.get(r, c).as_constant().expect("numeric") / p.as_constant().expect("numeric")
}

impl ChevalleySet {
    pub fn size(&self) -> usize {
        self.e[0].size()
    }

    /// `tr(e_i f_i)` for each `i`.
    pub fn trace_normalization(&self) -> Vec<Rational> {
        self.e
            .iter()
            .zip(&self.f)
            .map(|(e, f)| e.mul(f).trace().as_constant().unwrap_or_else(Rational::zero))
            .collect()
    }
}

/// A classical Lie algebra realized by matrices.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    set: ChevalleySet,
    roots: Vec<Vec<i64>>,
}

impl MatrixAlgebra {
    pub fn new(family: Family, rank: usize) -> Result<MatrixAlgebra, CartanError> {
        let set = chevalley(family, rank)?;
        let size = set.size();
        let n = set.gcm.rank();
        // weight of E_{r,c} under ad h_i, solved against the Cartan matrix
        let mut roots = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                let d: Vec<Rational> = set
                    .h
                    .iter()
                    .map(|h| {
                        h.get(r, r).as_constant().unwrap_or_default()
                            - h.get(c, c).as_constant().unwrap_or_default()
                    })
                    .collect();
                roots.push(solve_cartan(&set.gcm, &d).unwrap_or_else(|| vec![0; n]));
            }
        }
        Ok(MatrixAlgebra { set, roots })
    }

    pub fn chevalley_set(&self) -> &ChevalleySet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.set.size()
    }
}

/// Integer `m` with `sum_j a_ij m_j = d_i`, if it exists.
fn solve_cartan(gcm: &Gcm, d: &[Rational]) -> Option<Vec<i64>> {
    let n = gcm.rank();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| rat(gcm.a(i, j))).collect();
            row.push(d[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            let v = &row[n];
            v.is_integer().then(|| v.to_integer().try_into().ok()).flatten()
        })
        .collect()
}

/// Matrix entry coordinate, displayed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry(pub usize, pub usize);

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "entry ({},{})", self.0 + 1, self.1 + 1)
    }
}

impl LieAlgebra for MatrixAlgebra {
    type Elem = PolyMatrix;
    type Key = Entry;

    fn describe(&self) -> String {
        format!("{}{} matrices ({}x{})", self.set.family, self.set.gcm.rank(), self.size(), self.size())
    }

    fn gcm(&self) -> &Gcm {
        &self.set.gcm
    }

    fn e(&self, i: usize) -> PolyMatrix {
        self.set.e[i].clone()
    }

    fn f(&self, i: usize) -> PolyMatrix {
        self.set.f[i].clone()
    }

    fn h(&self, i: usize) -> PolyMatrix {
        self.set.h[i].clone()
    }

    fn zero(&self) -> PolyMatrix {
        PolyMatrix::zeros(self.size())
    }

    fn add(&self, x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
        x.add(y)
    }

    fn scale(&self, c: &Poly, x: &PolyMatrix) -> PolyMatrix {
        x.scale(c)
    }

    fn bracket(&self, x: &PolyMatrix, y: &PolyMatrix) -> Result<PolyMatrix, LieError> {
        Ok(x.bracket(y))
    }

    fn components(&self, x: &PolyMatrix) -> Vec<(Entry, Poly)> {
        x.entries().map(|((r, c), p)| (Entry(r, c), p.clone())).collect()
    }

    fn map_coeffs(&self, x: &PolyMatrix, f: &dyn Fn(&Poly) -> Poly) -> PolyMatrix {
        x.map(f)
    }

    fn root_of(&self, key: &Entry) -> Vec<i64> {
        self.roots[key.0 * self.size() + key.1].clone()
    }

    fn is_zero(&self, x: &PolyMatrix) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::chevalley_relations;

    #[test]
    fn sl2_vertex_matrix() {
        let alg = MatrixAlgebra::new(Family::A, 1).unwrap();
        let a = Poly::var("a");
        let u = alg.lin(&[
            (Poly::one(), alg.e(0)),
            (a.clone(), alg.h(0)),
            (-&(&a * &a), alg.f(0)),
        ]);
        let want = PolyMatrix::from_rows(vec![
            vec![a.clone(), Poly::one()],
            vec![-&(&a * &a), -&a],
        ])
        .unwrap();
        assert_eq!(u, want);
    }

    #[test]
    fn a2_generators() {
        let set = chevalley(Family::A, 2).unwrap();
        assert_eq!(set.e[0], PolyMatrix::unit(3, 0, 1));
        assert_eq!(set.h[0], PolyMatrix::unit(3, 0, 0).sub(&PolyMatrix::unit(3, 1, 1)));
    }

    #[test]
    fn defining_relations_hold() {
        let cases = [
            (Family::A, 1..=6),
            (Family::B, 2..=4),
            (Family::C, 2..=4),
            (Family::D, 3..=5),
        ];
        for (family, ranks) in cases {
            for n in ranks {
                let alg = MatrixAlgebra::new(family, n).unwrap();
                for (name, res) in chevalley_relations(&alg) {
                    assert_eq!(res, Ok(None), "{family}{n}: {name}");
                }
            }
        }
    }

    #[test]
    fn root_labels_of_entries() {
        let alg = MatrixAlgebra::new(Family::A, 3).unwrap();
        assert_eq!(alg.root_of(&Entry(0, 3)), vec![1, 1, 1]);
        assert_eq!(alg.root_of(&Entry(2, 1)), vec![0, -1, 0]);
        let c2 = MatrixAlgebra::new(Family::C, 2).unwrap();
        // e_2 = E_{2,3} is the long simple root
        assert_eq!(c2.root_of(&Entry(1, 2)), vec![0, 1]);
        assert_eq!(c2.root_of(&Entry(0, 3)), vec![2, 1]);
    }

    #[test]
    fn trace_normalization_is_positive() {
        for (family, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let set = chevalley(family, n).unwrap();
            assert!(set.trace_normalization().iter().all(|t| t > &Rational::zero()));
        }
    }
}
