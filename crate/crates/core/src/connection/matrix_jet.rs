use num_traits::One;

use crate::error::{JetError, Result};
use crate::jet_algebra::TruncatedSeries;
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A matrix over `A^d_r`, stored row-major. Rectangular shapes are allowed.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixJet {
    rows: usize,
    cols: usize,
    dims: usize,
    order: u32,
    entries: Vec<TruncatedSeries>,
}

impl MatrixJet {
    /// Builds from rows of series of a common shape.
    pub fn from_rows(rows: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(JetError::DimensionMismatch {
                expected_dims: 1,
                expected_order: 0,
                found_dims: 0,
                found_order: 0,
            });
        }
        let shape = rows[0][0].shape();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(JetError::ArityMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.shape() != shape {
                    return Err(JetError::shape(shape, s.shape()));
                }
                entries.push(s);
            }
        }
        Ok(MatrixJet {
            rows: nrows,
            cols: ncols,
            dims: shape.0,
            order: shape.1,
            entries,
        })
    }

    pub(crate) fn from_fn(
        rows: usize,
        cols: usize,
        dims: usize,
        order: u32,
        mut f: impl FnMut(usize, usize) -> TruncatedSeries,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixJet {
            rows,
            cols,
            dims,
            order,
            entries,
        }
    }

    pub fn constant(m: &Matrix, dims: usize, order: u32) -> Self {
        Self::from_fn(m.rows(), m.cols(), dims, order, |i, j| {
            TruncatedSeries::constant(dims, order, m[(i, j)].clone())
        })
    }

    pub fn identity(size: usize, dims: usize, order: u32) -> Self {
        Self::constant(&Matrix::identity(size), dims, order)
    }

    pub fn zeros(rows: usize, cols: usize, dims: usize, order: u32) -> Self {
        Self::from_fn(rows, cols, dims, order, |_, _| {
            TruncatedSeries::zero(dims, order)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut TruncatedSeries {
        &mut self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<TruncatedSeries>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncatedSeries::is_zero)
    }

    pub fn constant_term(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.entry(i, j).constant_term();
            }
        }
        m
    }

    pub fn transpose(&self) -> MatrixJet {
        Self::from_fn(self.cols, self.rows, self.dims, self.order, |i, j| {
            self.entry(j, i).clone()
        })
    }

    fn check_shape(&self, other: &MatrixJet) -> Result<()> {
        if (self.dims, self.order) != (other.dims, other.order) {
            return Err(JetError::shape(
                (self.dims, self.order),
                (other.dims, other.order),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixJet) -> Result<MatrixJet> {
        self.check_shape(other)?;
        if self.cols != other.rows {
            return Err(JetError::ArityMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(
            self.rows,
            other.cols,
            self.dims,
            self.order,
            |i, j| {
                let mut acc = TruncatedSeries::zero(self.dims, self.order);
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(i, k) * other.entry(k, j));
                }
                acc
            },
        ))
    }

    pub fn add(&self, other: &MatrixJet) -> Result<MatrixJet> {
        self.check_shape(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(JetError::ArityMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self::from_fn(
            self.rows,
            self.cols,
            self.dims,
            self.order,
            |i, j| self.entry(i, j) + other.entry(i, j),
        ))
    }

    pub fn sub(&self, other: &MatrixJet) -> Result<MatrixJet> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> MatrixJet {
        Self::from_fn(self.rows, self.cols, self.dims, self.order, |i, j| {
            self.entry(i, j).scale(c)
        })
    }

    /// `F · A` for a constant matrix `A`.
    pub fn mul_matrix(&self, a: &Matrix) -> Result<MatrixJet> {
        self.mul(&MatrixJet::constant(a, self.dims, self.order))
    }

    /// `A · F` for a constant matrix `A`.
    pub fn left_mul_matrix(&self, a: &Matrix) -> Result<MatrixJet> {
        MatrixJet::constant(a, self.dims, self.order).mul(self)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixJet {
        Self::from_fn(rows.len(), cols.len(), self.dims, self.order, |i, j| {
            self.entry(rows[i], cols[j]).clone()
        })
    }

    /// Entrywise `∂/∂t_a`; the order drops by one.
    pub fn derive(&self, a: usize) -> Result<MatrixJet> {
        let order = self.order.saturating_sub(1);
        let entries = self
            .entries
            .iter()
            .map(|s| s.derive(a)?.restrict(order))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixJet {
            rows: self.rows,
            cols: self.cols,
            dims: self.dims,
            order,
            entries,
        })
    }

    pub fn restrict(&self, order: u32) -> Result<MatrixJet> {
        let entries = self
            .entries
            .iter()
            .map(|s| s.restrict(order))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixJet {
            rows: self.rows,
            cols: self.cols,
            dims: self.dims,
            order,
            entries,
        })
    }

    /// Inverse in `GL_m(A^d_r)`. Writing `F = F_0 (I + N)` with `N` nilpotent,
    /// `F^{-1} = (Σ_{k≤r} (-N)^k) F_0^{-1}`.
    pub fn invert(&self) -> Result<MatrixJet> {
        if self.rows != self.cols {
            return Err(JetError::SingularInitial);
        }
        let f0_inv = self
            .constant_term()
            .inverse()
            .ok_or(JetError::SingularInitial)?;
        let (d, r) = (self.dims, self.order);
        let n = self.left_mul_matrix(&f0_inv)?;
        let n = n.sub(&MatrixJet::identity(self.rows, d, r))?;
        let minus_n = n.scale(&-Rational::one());
        let mut acc = MatrixJet::identity(self.rows, d, r);
        let mut power = MatrixJet::identity(self.rows, d, r);
        for _ in 0..r {
            power = power.mul(&minus_n)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        acc.mul_matrix(&f0_inv)
    }
}

/// Inverse of an invertible matrix jet; `SingularInitial` if the constant term is singular.
pub fn matrixjet_invert(f: &MatrixJet) -> Result<MatrixJet> {
    f.invert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> TruncatedSeries {
        TruncatedSeries::parse(text, 1, 3).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = MatrixJet::from_rows(vec![
            vec![s("2 + t1"), s("t1^2")],
            vec![s("1 - t1^3"), s("1 + t1")],
        ])
        .unwrap();
        let g = matrixjet_invert(&f).unwrap();
        assert_eq!(f.mul(&g).unwrap(), MatrixJet::identity(2, 1, 3));
        assert_eq!(g.mul(&f).unwrap(), MatrixJet::identity(2, 1, 3));
    }

    #[test]
    fn singular_constant_term() {
        let f = MatrixJet::from_rows(vec![vec![s("t1")]]).unwrap();
        assert!(matches!(f.invert(), Err(JetError::SingularInitial)));
    }
}
