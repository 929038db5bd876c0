use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{JetError, Result};
use crate::rational::Rational;

/// Quotient of two polynomials over `Q`.
///
/// The denominator is kept normalized (integer coefficients without common content, positive
/// leading coefficient); a constant denominator is folded into the numerator. No polynomial gcd
/// is taken, so equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(JetError::InvalidChart("zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if den.is_constant() {
            let c = den.constant_term();
            return RationalFunction {
                num: num.scale(&(Rational::one() / c)),
                den: Polynomial::one(),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RationalFunction {
                num: q,
                den: Polynomial::one(),
            };
        }
        let normal = den.normalized();
        // normal = den * s for a nonzero rational s
        let (m, c) = den.leading_term().expect("nonzero");
        let s = normal.coefficient(m) / c;
        RationalFunction {
            num: num.scale(&s),
            den: normal,
        }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn arity(&self) -> usize {
        self.num.arity().max(self.den.arity())
    }

    /// Value at a point; `SingularPoint` if the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(JetError::SingularPoint(
                "denominator vanishes at the base point".into(),
            ));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn derive(&self, v: usize) -> RationalFunction {
        if self.is_polynomial() {
            return Self::polynomial(self.num.derive(v));
        }
        let num = &(&self.num.derive(v) * &self.den) - &(&self.num * &self.den.derive(v));
        Self::canonical(num, &self.den * &self.den)
    }

    pub fn inverse(&self) -> Result<RationalFunction> {
        if self.num.is_zero() {
            return Err(JetError::NotAUnit);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::polynomial(Polynomial::one())
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs.clone())
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl RationalFunction {
    /// Evaluates on a tuple of series: `num(σ) · den(σ)^{-1}`. The denominator must not vanish
    /// at the constant terms.
    pub fn compose_series(
        &self,
        comps: &[crate::jet_algebra::TruncatedSeries],
    ) -> Result<crate::jet_algebra::TruncatedSeries> {
        use crate::jet_algebra::series_compose;
        let num = series_compose(&self.num, comps)?;
        if self.is_polynomial() {
            return Ok(num);
        }
        let den = series_compose(&self.den, comps)?;
        let inv = den.invert_unit().map_err(|_| {
            JetError::SingularPoint("denominator vanishes at the base point".into())
        })?;
        Ok(&num * &inv)
    }
}
