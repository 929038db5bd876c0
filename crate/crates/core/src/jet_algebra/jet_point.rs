use num_traits::Zero;

use super::multi_index::{monomial_count, MultiIndex};
use super::series::TruncatedSeries;
use crate::error::{JetError, Result};
use crate::rational::Rational;

/// A point of `J^d_r A^n`: `n` series sharing `(d, r)`.
///
/// The coefficient of `t^p` in component `i` is the jet coordinate `a_{p,i}`; the constant
/// terms form the base point.
#[derive(Clone, PartialEq, Debug)]
pub struct JetPoint {
    dims: usize,
    order: u32,
    series: Vec<TruncatedSeries>,
}

impl JetPoint {
    /// Builds a jet from components of a common shape. At least one component is required.
    pub fn new(series: Vec<TruncatedSeries>) -> Result<Self> {
        let Some(first) = series.first() else {
            return Err(JetError::ArityMismatch {
                expected: 1,
                found: 0,
            });
        };
        let shape = first.shape();
        for s in &series {
            if s.shape() != shape {
                return Err(JetError::shape(shape, s.shape()));
            }
        }
        Ok(JetPoint {
            dims: shape.0,
            order: shape.1,
            series,
        })
    }

    /// The constant jet at `point`.
    pub fn constant(point: &[Rational], dims: usize, order: u32) -> Result<Self> {
        Self::new(
            point
                .iter()
                .map(|c| TruncatedSeries::constant(dims, order, c.clone()))
                .collect(),
        )
    }

    /// `x + t_1 v_1 + ... + t_d v_d`, the straight-line jet with tangent vectors `vectors`.
    pub fn linear(point: &[Rational], vectors: &[Vec<Rational>], order: u32) -> Result<Self> {
        let dims = vectors.len();
        let mut comps = Vec::with_capacity(point.len());
        for (i, x) in point.iter().enumerate() {
            let mut s = TruncatedSeries::constant(dims, order, x.clone());
            for (a, v) in vectors.iter().enumerate() {
                if v.len() != point.len() {
                    return Err(JetError::ArityMismatch {
                        expected: point.len(),
                        found: v.len(),
                    });
                }
                s.set(MultiIndex::unit(dims, a), v[i].clone());
            }
            comps.push(s);
        }
        Self::new(comps)
    }

    /// Inverse of [`JetPoint::coordinates`].
    pub fn from_coordinates(
        n: usize,
        dims: usize,
        order: u32,
        coords: &[Rational],
    ) -> Result<Self> {
        let indices = MultiIndex::all(dims, order);
        let ell = indices.len();
        if coords.len() != n * ell {
            return Err(JetError::ArityMismatch {
                expected: n * ell,
                found: coords.len(),
            });
        }
        let comps = (0..n)
            .map(|i| {
                TruncatedSeries::from_terms(
                    dims,
                    order,
                    indices
                        .iter()
                        .zip(&coords[i * ell..(i + 1) * ell])
                        .map(|(p, c)| (p.clone(), c.clone())),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Ambient dimension `n`.
    pub fn arity(&self) -> usize {
        self.series.len()
    }

    pub fn series(&self) -> &[TruncatedSeries] {
        &self.series
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.series[i]
    }

    pub fn basepoint(&self) -> Vec<Rational> {
        self.series.iter().map(|s| s.constant_term()).collect()
    }

    /// All `n * ell` coordinates `a_{p,i}`, component outer and monomial inner.
    pub fn coordinates(&self) -> Vec<Rational> {
        let indices = MultiIndex::all(self.dims, self.order);
        let mut out = Vec::with_capacity(self.series.len() * indices.len());
        for s in &self.series {
            for p in &indices {
                out.push(s.coeff(p));
            }
        }
        out
    }

    /// Number of monomials `ell = |P^d_r|`.
    pub fn ell(&self) -> usize {
        monomial_count(self.dims, self.order)
    }

    pub fn restrict(&self, order: u32) -> Result<Self> {
        Ok(JetPoint {
            dims: self.dims,
            order,
            series: self
                .series
                .iter()
                .map(|s| s.restrict(order))
                .collect::<Result<_>>()?,
        })
    }

    /// Row `a` holds the coefficients of `t_a` across the components.
    pub fn tangent_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dims)
            .map(|a| {
                let p = MultiIndex::unit(self.dims, a);
                self.series.iter().map(|s| s.coeff(&p)).collect()
            })
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.series
            .iter()
            .all(|s| s.terms().all(|(p, c)| p.is_zero() || c.is_zero()))
    }
}
