//! Exact rationals backed by `num-rational`'s big rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{JetError, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` (whitespace tolerated).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || JetError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(JetError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `true` if `q` is the square of a rational.
pub fn is_square(q: &Rational) -> bool {
    sqrt_exact(q).is_some()
}

/// Exact rational square root, if one exists.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(format(&frac(3, 2)), "3/2");
        assert_eq!(format(&frac(-4, 2)), "-2");
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn squares() {
        assert!(is_square(&frac(9, 4)));
        assert!(!is_square(&int(3)));
        assert!(!is_square(&int(-4)));
        assert_eq!(sqrt_exact(&frac(25, 49)), Some(frac(5, 7)));
    }
}
