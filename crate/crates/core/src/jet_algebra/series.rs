use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use crate::error::{JetError, Result};
use crate::poly::{write_term, Polynomial};
use crate::rational::Rational;

/// Coefficient ring of a [`Series`]: a commutative `Q`-algebra.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: Rational) -> Self;
}

impl Coefficient for Rational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl Coefficient for Polynomial {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn scale(&self, q: &Rational) -> Self {
        Polynomial::scale(self, q)
    }
    fn from_rational(q: Rational) -> Self {
        Polynomial::constant(q)
    }
}

/// Element of `A^d_r` with coefficients in `C`. No stored coefficient is zero and no stored
/// index has degree above `order`.
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    dims: usize,
    order: u32,
    coeffs: BTreeMap<MultiIndex, C>,
}

/// Series with exact rational coefficients.
pub type TruncatedSeries = Series<Rational>;

impl<C: Coefficient> Series<C> {
    pub fn zero(dims: usize, order: u32) -> Self {
        Series {
            dims,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dims: usize, order: u32, c: C) -> Self {
        let mut s = Self::zero(dims, order);
        s.set(MultiIndex::zero(dims), c);
        s
    }

    pub fn one(dims: usize, order: u32) -> Self {
        Self::constant(dims, order, C::one())
    }

    /// The coordinate `t_i` (zero when `order == 0`).
    pub fn variable(dims: usize, order: u32, i: usize) -> Result<Self> {
        if i >= dims {
            return Err(JetError::IndexOutOfRange {
                index: i,
                bound: dims,
            });
        }
        let mut s = Self::zero(dims, order);
        s.set(MultiIndex::unit(dims, i), C::one());
        Ok(s)
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats and dropping anything
    /// above the order.
    pub fn from_terms(
        dims: usize,
        order: u32,
        terms: impl IntoIterator<Item = (MultiIndex, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(dims, order);
        for (p, c) in terms {
            if p.dims() != dims {
                return Err(JetError::ArityMismatch {
                    expected: dims,
                    found: p.dims(),
                });
            }
            s.add_to(p, &c);
        }
        Ok(s)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn shape(&self) -> (usize, u32) {
        (self.dims, self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &MultiIndex) -> C {
        self.coeffs.get(p).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&MultiIndex::zero(self.dims))
    }

    /// Nonzero terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Sets a coefficient; indices above the order are ignored.
    pub fn set(&mut self, p: MultiIndex, c: C) {
        if p.degree() > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, c);
        }
    }

    fn add_to(&mut self, p: MultiIndex, c: &C) {
        if c.is_zero() || p.degree() > self.order {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(JetError::shape(self.shape(), other.shape()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.dims, self.order);
        for (p, c) in &self.coeffs {
            out.set(p.clone(), c.scale(q));
        }
        out
    }

    pub fn scale_by(&self, c: &C) -> Self {
        let mut out = Self::zero(self.dims, self.order);
        for (p, a) in &self.coeffs {
            out.set(p.clone(), a.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dims, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The series minus its constant term.
    pub fn offset(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(&MultiIndex::zero(self.dims));
        out
    }

    /// Formal `d/dt_i` (0-based `i`). The declared order stays `r`, but the result is only
    /// faithful through degree `r - 1`: nothing fills degree `r`.
    pub fn derive(&self, i: usize) -> Result<Self> {
        if i >= self.dims {
            return Err(JetError::IndexOutOfRange {
                index: i,
                bound: self.dims,
            });
        }
        let mut out = Self::zero(self.dims, self.order);
        for (p, c) in &self.coeffs {
            let e = p.exps()[i];
            if e == 0 {
                continue;
            }
            let mut q = p.exps().to_vec();
            q[i] -= 1;
            out.set(
                MultiIndex::new(q),
                c.scale(&Rational::from_integer(BigInt::from(e))),
            );
        }
        Ok(out)
    }

    /// Truncation to order `r' <= r`.
    pub fn restrict(&self, order: u32) -> Result<Self> {
        if order > self.order {
            return Err(JetError::OrderIncrease {
                from: self.order,
                to: order,
            });
        }
        Ok(Series {
            dims: self.dims,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.degree() <= order)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        })
    }

    /// Reinterprets the series at a higher order with zero new coefficients.
    pub fn pad(&self, order: u32) -> Self {
        let mut out = self.clone();
        out.order = order.max(self.order);
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.dims, self.order);
        for (p, c) in &self.coeffs {
            out.set(p.clone(), f(c));
        }
        out
    }
}

/// Evaluates a polynomial on a tuple of series sharing one shape, truncating at that order.
pub fn series_compose<C: Coefficient>(f: &Polynomial, comps: &[Series<C>]) -> Result<Series<C>> {
    let Some(first) = comps.first() else {
        if f.arity() > 0 {
            return Err(JetError::ArityMismatch {
                expected: f.arity(),
                found: 0,
            });
        }
        return Err(JetError::Unsupported(
            "composition needs at least one component to fix the series shape".into(),
        ));
    };
    if f.arity() > comps.len() {
        return Err(JetError::ArityMismatch {
            expected: f.arity(),
            found: comps.len(),
        });
    }
    for s in comps {
        first.check_shape(s)?;
    }
    let (d, r) = first.shape();
    let mut powers: BTreeMap<(u32, u32), Series<C>> = BTreeMap::new();
    let mut out = Series::zero(d, r);
    for (m, c) in f.terms() {
        let mut t = Series::constant(d, r, C::from_rational(c.clone()));
        for &(v, e) in m.pairs() {
            powers
                .entry((v, e))
                .or_insert_with(|| comps[v as usize].pow(e));
            t = &t * &powers[&(v, e)];
        }
        out = &out + &t;
    }
    Ok(out)
}

impl TruncatedSeries {
    /// Multiplicative inverse; `NotAUnit` when the constant term vanishes.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(JetError::NotAUnit);
        }
        let inv0 = Rational::one() / &c0;
        // self = c0 (1 + n) with n nilpotent of index r + 1
        let n = self.offset().scale(&inv0);
        let neg_n = -n;
        let mut acc = Self::one(self.dims, self.order);
        let mut power = Self::one(self.dims, self.order);
        for _ in 0..self.order {
            power = &power * &neg_n;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv0))
    }

    /// Parses the canonical text form with variables `t1..td`.
    pub fn parse(text: &str, dims: usize, order: u32) -> Result<Self> {
        let names = variable_names(dims);
        let p = crate::poly::parse_polynomial(text, &names)?;
        Self::from_polynomial(&p, dims, order)
    }

    /// Reads a polynomial in `t1..td` as a series, truncating above `order`.
    pub fn from_polynomial(p: &Polynomial, dims: usize, order: u32) -> Result<Self> {
        if p.arity() > dims {
            return Err(JetError::ArityMismatch {
                expected: dims,
                found: p.arity(),
            });
        }
        let terms = p.terms().map(|(m, c)| {
            let exps: Vec<u32> = (0..dims).map(|v| m.exponent(v)).collect();
            (MultiIndex::new(exps), c.clone())
        });
        Self::from_terms(dims, order, terms)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .map(|(p, c)| (crate::poly::Monomial::from_dense(p.exps()), c.clone())),
        )
    }

    /// Canonical text: terms in increasing monomial order joined by `" + "`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn variable_names(dims: usize) -> Vec<String> {
    (1..=dims).map(|i| format!("t{i}")).collect()
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<(String, u32)> = p
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (format!("t{}", i + 1), e))
                .collect();
            write_term(f, c, &factors)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(d={}, r={}", self.dims, self.order)?;
        for (p, c) in &self.coeffs {
            write!(f, ", {p:?}: {c:?}")?;
        }
        write!(f, ")")
    }
}

impl<C: Coefficient> Add<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        assert_eq!(self.shape(), rhs.shape(), "series shape mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_to(p.clone(), c);
        }
        out
    }
}

impl<C: Coefficient> Sub<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self + &(-rhs.clone())
    }
}

impl<C: Coefficient> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(mut self) -> Series<C> {
        for c in self.coeffs.values_mut() {
            *c = -std::mem::replace(c, C::zero());
        }
        self
    }
}

impl<C: Coefficient> Mul<&Series<C>> for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        assert_eq!(self.shape(), rhs.shape(), "series shape mismatch");
        let r = self.order;
        let mut out = Series::zero(self.dims, r);
        for (pa, ca) in &self.coeffs {
            let budget = r - pa.degree();
            for (pb, cb) in &rhs.coeffs {
                // terms are sorted by degree, so the rest is truncated too
                if pb.degree() > budget {
                    break;
                }
                out.add_to(pa.add(pb), &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<C: Coefficient> Add for Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Series<C>) -> Series<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Series<C>) -> Series<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Series<C>) -> Series<C> {
        &self * &rhs
    }
}
