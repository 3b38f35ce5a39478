//! Fraction-free elimination over `Q[params]` and plain elimination over `Q`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;

use super::poly::Poly;
use super::rational::{rat, Rational};
use super::var::Var;
use super::ArithError;

/// Result of Bareiss elimination.
#[derive(Clone, Debug)]
pub struct FfEchelon {
    pub rank: usize,
    /// `(original row, column)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// Row-echelon form (rows permuted; entries below pivots cleared).
    pub echelon: Vec<Vec<Poly>>,
    /// Last nonzero pivot, equal up to sign to the leading principal minor
    /// on pivot rows and columns.
    pub last_pivot: Poly,
    /// Parity of the row permutation.
    pub swaps_odd: bool,
}

fn check_rect<T>(m: &[Vec<T>]) -> Result<usize, ArithError> {
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(ArithError::Shape("rows have different lengths".into()));
    }
    Ok(cols)
}

/// Rank over the fraction field, by fraction-free Gaussian elimination.
pub fn ff_rank(m: &[Vec<Poly>]) -> Result<FfEchelon, ArithError> {
    let cols = check_rect(m)?;
    let rows = m.len();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut swaps_odd = false;
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        // prefer the sparsest pivot to keep intermediate entries small
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].num_terms())
        else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            perm.swap(p, r);
            swaps_odd = !swaps_odd;
        }
        let pivot = a[r][col].clone();
        for i in r + 1..rows {
            let factor = a[i][col].clone();
            for j in col + 1..cols {
                let num = &(&pivot * &a[i][j]) - &(&factor * &a[r][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][col] = Poly::zero();
        }
        // rows above r are untouched; scale rows below by nothing else
        pivots.push((perm[r], col));
        prev = pivot;
        r += 1;
    }
    Ok(FfEchelon {
        rank: r,
        pivots,
        echelon: a,
        last_pivot: prev,
        swaps_odd,
    })
}

/// Determinant of a square polynomial matrix.
pub fn ff_det(m: &[Vec<Poly>]) -> Result<Poly, ArithError> {
    let cols = check_rect(m)?;
    if cols != m.len() {
        return Err(ArithError::Shape(format!("{}x{} is not square", m.len(), cols)));
    }
    if cols == 0 {
        return Ok(Poly::one());
    }
    let e = ff_rank(m)?;
    if e.rank < cols {
        return Ok(Poly::zero());
    }
    Ok(if e.swaps_odd { -e.last_pivot } else { e.last_pivot })
}

/// Kernel basis with polynomial entries (denominators cleared).
///
/// For each non-pivot column `j`, the vector is given by Cramer's rule on the
/// independent rows: `x_j = det M[R,P]`, `x_{p_k} = -det(M[R,P] with column k
/// replaced by column j)`, all other entries zero.
pub fn ff_kernel(m: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>, ArithError> {
    let cols = check_rect(m)?;
    let e = ff_rank(m)?;
    let rows_r: Vec<usize> = e.pivots.iter().map(|&(r, _)| r).collect();
    let cols_p: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let pivot_set: BTreeSet<usize> = cols_p.iter().copied().collect();
    let sub = |replace: Option<(usize, usize)>| -> Vec<Vec<Poly>> {
        rows_r
            .iter()
            .map(|&r| {
                cols_p
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| match replace {
                        Some((kk, j)) if kk == k => m[r][j].clone(),
                        _ => m[r][c].clone(),
                    })
                    .collect()
            })
            .collect()
    };
    let d = ff_det(&sub(None))?;
    let mut basis = Vec::new();
    for j in (0..cols).filter(|j| !pivot_set.contains(j)) {
        let mut v = vec![Poly::zero(); cols];
        v[j] = d.clone();
        for (k, &c) in cols_p.iter().enumerate() {
            v[c] = -ff_det(&sub(Some((k, j))))?;
        }
        basis.push(normalize_vector(v));
    }
    Ok(basis)
}

/// Divides out the common monomial and rational content, and fixes the sign so
/// that the first nonzero entry has a positive leading coefficient.
fn normalize_vector(v: Vec<Poly>) -> Vec<Poly> {
    use num_integer::Integer;
    let mut common: Option<BTreeMap<Var, u32>> = None;
    let mut num_gcd = num_bigint::BigInt::zero();
    let mut den_lcm = num_bigint::BigInt::one();
    for p in &v {
        for (m, c) in p.terms() {
            let exps: BTreeMap<Var, u32> = m.factors().collect();
            common = Some(match common {
                None => exps,
                Some(prev) => prev
                    .into_iter()
                    .filter_map(|(x, e)| exps.get(&x).map(|&f| (x, e.min(f))))
                    .collect(),
            });
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let Some(common) = common else {
        return v;
    };
    let mono = super::poly::Monomial::from_exponents(common);
    let sign_neg = v
        .iter()
        .find_map(|p| p.leading_term().map(|(_, c)| c < &Rational::zero()))
        .unwrap_or(false);
    let mut scale = Rational::new(den_lcm, num_gcd);
    if sign_neg {
        scale = -scale;
    }
    let divisor = Poly::term(Rational::one(), mono);
    v.into_iter()
        .map(|p| p.div_exact(&divisor).expect("common monomial divides").scale(&scale))
        .collect()
}

/// Evaluates every entry of a polynomial matrix.
pub fn eval_matrix(
    m: &[Vec<Poly>],
    assignment: &BTreeMap<Var, Rational>,
) -> Result<Vec<Vec<Rational>>, ArithError> {
    m.iter()
        .map(|row| row.iter().map(|p| p.eval(assignment)).collect())
        .collect()
}

/// Incremental row-echelon basis over `Q`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    len: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(len: usize) -> Echelon {
        Echelon { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    /// Residual of `v` after reduction by the current basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(*p) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Normalized rows `(pivot, row)` in insertion order.
    pub fn rows(&self) -> &[(usize, Vec<Rational>)] {
        &self.rows
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &r[p];
        for x in r.iter_mut().skip(p) {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}

pub fn rational_rank(m: &[Vec<Rational>]) -> Result<usize, ArithError> {
    let cols = check_rect(m)?;
    let mut e = Echelon::new(cols);
    for row in m {
        e.insert(row);
    }
    Ok(e.rank())
}

/// Assignment with entries drawn uniformly from the nonzero integers in
/// `[-10^4, 10^4]`.
pub fn random_assignment<R: Rng>(
    vars: impl IntoIterator<Item = Var>,
    rng: &mut R,
) -> BTreeMap<Var, Rational> {
    let mut vars: Vec<Var> = vars.into_iter().collect();
    vars.sort_by(|a, b| a.name_cmp(b));
    vars.dedup();
    vars.into_iter()
        .map(|v| {
            let mut x = 0i64;
            while x == 0 {
                x = rng.gen_range(-10_000..=10_000);
            }
            (v, rat(x))
        })
        .collect()
}

/// Ranks at three independent random specializations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedRank {
    pub ranks: [usize; 3],
}

impl SpecializedRank {
    pub fn agreed(&self) -> Option<usize> {
        (self.ranks[0] == self.ranks[1] && self.ranks[1] == self.ranks[2]).then_some(self.ranks[0])
    }
}

pub fn specialized_ranks<R: Rng>(
    m: &[Vec<Poly>],
    rng: &mut R,
) -> Result<SpecializedRank, ArithError> {
    let vars: BTreeSet<Var> = m.iter().flatten().flat_map(Poly::vars).collect();
    let mut ranks = [0; 3];
    for r in &mut ranks {
        let asg = random_assignment(vars.iter().copied(), rng);
        *r = rational_rank(&eval_matrix(m, &asg)?)?;
    }
    Ok(SpecializedRank { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Vec<Vec<Poly>> {
        rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(ff_rank(&mat(&[&["1", "0"], &["0", "1"]])).unwrap().rank, 2);
        assert_eq!(ff_rank(&mat(&[&["a1", "a1"], &["a1", "a1"]])).unwrap().rank, 1);
        assert_eq!(ff_rank(&mat(&[&["0", "0"], &["0", "0"]])).unwrap().rank, 0);
    }

    #[test]
    fn pivots_skip_zero_columns() {
        let e = ff_rank(&mat(&[&["0", "b1", "1"], &["0", "b1^2", "b1"], &["0", "0", "1"]])).unwrap();
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivots[0].1, 1);
        assert_eq!(e.pivots[1].1, 2);
    }

    #[test]
    fn determinant_with_swap() {
        let d = ff_det(&mat(&[&["0", "x"], &["y", "1"]])).unwrap();
        assert_eq!(d, p("-x*y"));
        let d3 = ff_det(&mat(&[&["a", "b", "0"], &["c", "d", "0"], &["0", "0", "e"]])).unwrap();
        assert_eq!(d3, p("a*d*e - b*c*e"));
    }

    #[test]
    fn kernels() {
        assert_eq!(ff_kernel(&mat(&[&["0", "0"], &["0", "0"]])).unwrap().len(), 2);
        assert!(ff_kernel(&mat(&[&["1", "0"], &["0", "1"]])).unwrap().is_empty());
        let m = mat(&[&["0", "-b1", "0"], &["b1", "0", "1"], &["0", "-1", "0"]]);
        let k = ff_kernel(&m).unwrap();
        assert_eq!(k, vec![vec![p("1"), p("0"), p("-b1")]]);
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[rat(1), rat(2), rat(3)]));
        assert!(e.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!e.insert(&[rat(2), rat(5), rat(7)]));
        assert!(e.contains(&[rat(1), rat(3), rat(4)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn specializations_agree_on_generic_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m = mat(&[&["a1", "a2"], &["a2", "a1"]]);
        let s = specialized_ranks(&m, &mut rng).unwrap();
        assert_eq!(s.agreed(), Some(2));
    }
}
