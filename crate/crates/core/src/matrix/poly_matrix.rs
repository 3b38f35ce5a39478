use std::fmt;

use crate::arith::{ArithError, Poly};

/// Dense square matrix over `Q[params]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> PolyMatrix {
        PolyMatrix {
            n,
            data: vec![Poly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Elementary matrix `E_{r,c}` (0-based).
    pub fn unit(n: usize, r: usize, c: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n);
        m.set(r, c, Poly::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<PolyMatrix, ArithError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(ArithError::Shape(format!("{n} rows but a row of different length")));
        }
        Ok(PolyMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.data[r * self.n + c] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        self.data.chunks(self.n.max(1)).map(<[Poly]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(k, p)| ((k / n, k % n), p))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n, "matrix sizes");
        PolyMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n, "matrix sizes");
        PolyMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        if c.is_zero() {
            return PolyMatrix::zeros(self.n);
        }
        self.map(|p| p * c)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n, "matrix sizes");
        let n = self.n;
        let mut out = PolyMatrix::zeros(n);
        for ((r, k), a) in self.entries() {
            for c in 0..n {
                let b = other.get(k, c);
                if !b.is_zero() {
                    out.data[r * n + c] += &(a * b);
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &PolyMatrix) -> PolyMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.n;
        let mut out = PolyMatrix::zeros(n);
        for ((r, c), p) in self.entries() {
            out.data[c * n + r] = p.clone();
        }
        out
    }

    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero();
        for i in 0..self.n {
            acc += self.get(i, i);
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>, ArithError> {
        if v.len() != self.n {
            return Err(ArithError::Shape(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.n,
                self.n
            )));
        }
        let mut out = vec![Poly::zero(); self.n];
        for ((r, c), p) in self.entries() {
            if !v[c].is_zero() {
                out[r] += &(p * &v[c]);
            }
        }
        Ok(out)
    }

    /// Row-major table of canonical polynomial strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .into_iter()
            .map(|r| r.iter().map(Poly::to_string).collect())
            .collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

/// `x v` for a matrix acting on column vectors of the defining representation.
pub fn std_rep_action(x: &PolyMatrix, v: &[Poly]) -> Result<Vec<Poly>, ArithError> {
    x.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_is_traceless() {
        let a = PolyMatrix::from_rows(vec![
            vec![Poly::var("a"), Poly::int(1)],
            vec![Poly::int(0), Poly::var("b")],
        ])
        .unwrap();
        let b = PolyMatrix::unit(2, 1, 0);
        assert!(a.bracket(&b).trace().is_zero());
        assert!(!a.bracket(&b).is_zero());
    }

    #[test]
    fn action_on_basis_vectors() {
        let e12 = PolyMatrix::unit(3, 0, 1);
        let v2 = vec![Poly::zero(), Poly::one(), Poly::zero()];
        assert_eq!(std_rep_action(&e12, &v2).unwrap(), vec![Poly::one(), Poly::zero(), Poly::zero()]);
        assert!(std_rep_action(&e12, &[Poly::one()]).is_err());
        let zero = vec![Poly::zero(); 3];
        assert_eq!(std_rep_action(&e12, &zero).unwrap(), zero);
    }
}
