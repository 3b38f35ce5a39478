//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] is a map from [`Monomial`] to nonzero [`Rational`]. Terms are
//! kept in graded-lexicographic order on the interned variable order, so two
//! polynomials are equal iff their term maps are equal. Text output uses the
//! same graded-lex rule but on natural name order, which keeps it independent
//! of interning order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{format_rational, parse_rational, rat, Rational};
use super::var::Var;
use super::ArithError;

/// Power product of variables; exponents are positive and sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in exps {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / divisor` when the division is exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &divisor.0;
        for &(v, e) in &self.0 {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Graded-lex comparison using natural name order instead of intern order.
    pub fn name_cmp(&self, other: &Monomial) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let mut a: Vec<(Var, u32)> = self.0.to_vec();
        let mut b: Vec<(Var, u32)> = other.0.to_vec();
        a.sort_by(|x, y| x.0.name_cmp(&y.0));
        b.sort_by(|x, y| x.0.name_cmp(&y.0));
        lex_merge(&a, &b, |x, y| x.name_cmp(y))
    }
}

fn lex_merge(a: &[(Var, u32)], b: &[(Var, u32)], cmp: impl Fn(&Var, &Var) -> Ordering) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(x), Some(y)) => match cmp(&x.0, &y.0) {
                // the smaller variable is present only in `a`
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if x.1 != y.1 {
                        return x.1.cmp(&y.1);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_merge(&self.0, &other.0, |x, y| x.cmp(y)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut fs: Vec<(Var, u32)> = self.0.to_vec();
        fs.sort_by(|x, y| x.0.name_cmp(&y.0));
        for (k, (v, e)) in fs.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `Q[params]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(name: &str) -> Poly {
        Poly::term(Rational::one(), Monomial::var(Var::new(name)))
    }

    pub fn from_var(v: Var) -> Poly {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Some(c) iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Evaluates at an assignment; every variable of `self` must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ArithError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = assignment
                    .get(&v)
                    .ok_or_else(|| ArithError::MissingParameter(v.name().to_string()))?;
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for some variables; unassigned ones are kept.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in m.factors() {
                match map.get(&v) {
                    Some(p) => t = &t * &p.pow(e),
                    None => rest.push((v, e)),
                }
            }
            let t = &t * &Poly::term(Rational::one(), Monomial::from_exponents(rest));
            acc += &t;
        }
        acc
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&dm)?;
            let qc = c / &dc;
            let t = Poly::term(qc, qm);
            rem -= &(&t * divisor);
            quot += &t;
        }
        Some(quot)
    }

    /// Parses expressions such as `a1^2 - 3/2*a1*b2 + 7`.
    pub fn parse(src: &str) -> Result<Poly, ArithError> {
        let bad = || ArithError::Parse(src.to_string());
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut acc = Poly::zero();
        let mut chunks = Vec::new();
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                chunks.push(&cleaned[start..i]);
                start = i;
            }
        }
        chunks.push(&cleaned[start..]);
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes()[0] {
                b'+' => (1, &chunk[1..]),
                b'-' => (-1, &chunk[1..]),
                _ => (1, chunk),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut term = Poly::int(sign);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                let base_poly = if base.starts_with(|c: char| c.is_ascii_digit()) {
                    Poly::constant(parse_rational(base)?)
                } else if base.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    Poly::var(base)
                } else {
                    return Err(bad());
                };
                term = &term * &base_poly.pow(exp);
            }
            acc += &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|x, y| y.0.name_cmp(x.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

/// Arithmetic selector for [`PolyRing::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A declared parameter set. Operations through the ring reject operands
/// mentioning parameters outside the declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: BTreeSet<Var>,
}

impl PolyRing {
    pub fn new<'a>(names: impl IntoIterator<Item = &'a str>) -> PolyRing {
        PolyRing {
            vars: names.into_iter().map(Var::new).collect(),
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.vars().is_subset(&self.vars)
    }

    pub fn check(&self, p: &Poly) -> Result<(), ArithError> {
        match p.vars().difference(&self.vars).next() {
            Some(v) => Err(ArithError::ForeignParameter(v.name().to_string())),
            None => Ok(()),
        }
    }

    pub fn var(&self, name: &str) -> Result<Poly, ArithError> {
        let v = Var::new(name);
        if self.vars.contains(&v) {
            Ok(Poly::from_var(v))
        } else {
            Err(ArithError::ForeignParameter(name.to_string()))
        }
    }

    pub fn arith(&self, p: &Poly, q: &Poly, op: PolyOp) -> Result<Poly, ArithError> {
        self.check(p)?;
        self.check(q)?;
        Ok(match op {
            PolyOp::Add => p + q,
            PolyOp::Sub => p - q,
            PolyOp::Mul => p * q,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let ring = PolyRing::new(["a1", "a2"]);
        let r = ring.arith(&p("a1 + a2"), &p("a1 - a2"), PolyOp::Mul).unwrap();
        assert_eq!(r, p("a1^2 - a2^2"));
        assert_eq!(r.to_string(), "a1^2 - a2^2");
    }

    #[test]
    fn additive_identity_and_monomial_product() {
        let x = p("3*a1*b2 - 1/2");
        assert_eq!(&x + &Poly::zero(), x);
        assert_eq!(&p("a1*a2") * &p("a1*a2"), p("a1^2*a2^2"));
    }

    #[test]
    fn foreign_parameter_rejected() {
        let ring = PolyRing::new(["a1"]);
        let err = ring.arith(&p("a1"), &p("b1"), PolyOp::Add).unwrap_err();
        assert!(matches!(err, ArithError::ForeignParameter(ref n) if n == "b1"));
    }

    #[test]
    fn evaluation() {
        let a1 = Var::new("a1");
        let a2 = Var::new("a2");
        let mut asg = BTreeMap::new();
        asg.insert(a1, rat(2));
        asg.insert(a2, rat(3));
        assert_eq!(p("a1^2*a2").eval(&asg).unwrap(), rat(12));
        assert_eq!(p("5/7").eval(&BTreeMap::new()).unwrap(), ratio(5, 7));
        let mut only = BTreeMap::new();
        only.insert(a1, rat(9));
        assert_eq!((&p("a1") - &p("a1")).eval(&only).unwrap(), rat(0));
        assert!(matches!(
            p("a1*a2").eval(&only),
            Err(ArithError::MissingParameter(_))
        ));
    }

    #[test]
    fn exact_division() {
        let f = p("a1^2 - a2^2");
        assert_eq!(f.div_exact(&p("a1 - a2")).unwrap(), p("a1 + a2"));
        assert!(p("a1^2 + a2").div_exact(&p("a1")).is_none());
        assert_eq!(p("4*a1").div_exact(&p("2")).unwrap(), p("2*a1"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("b2*b1 + a10 + a2").to_string(), "b1*b2 + a2 + a10");
        assert_eq!(p("-a1").to_string(), "-a1");
        assert_eq!(p("1/2*a1^2 - 1").to_string(), "1/2*a1^2 - 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let b = Var::new("b1");
        let mut map = BTreeMap::new();
        map.insert(b, p("-a1*a2"));
        assert_eq!(p("b1^2 + b1*c").substitute(&map), p("a1^2*a2^2 - a1*a2*c"));
    }
}
