use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ArithError;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` exactly. No floating point is accepted.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::Parse(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient with an arbitrary integer upper argument, defined as
/// the falling factorial `x (x-1) ... (x-m+1) / m!`; zero for `m < 0`.
pub fn binomial(x: i64, m: i64) -> Rational {
    if m < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for k in 0..m {
        acc *= rat(x - k);
    }
    acc / factorial(m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("10/4").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn zero_is_canonical() {
        let z = ratio(0, 7);
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn binomial_negative_upper() {
        // x = -2, m = 3: (-2)(-3)(-4)/6 = -4
        assert_eq!(binomial(-2, 3), rat(-4));
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(0, 1), rat(0));
        assert_eq!(binomial(0, 0), rat(1));
        assert_eq!(binomial(3, -1), rat(0));
        // Pascal's rule holds for negative x as well.
        for x in -5..5 {
            for y in 0..5 {
                assert_eq!(binomial(x, y + 1) + binomial(x, y), binomial(x + 1, y + 1));
            }
        }
    }
}
