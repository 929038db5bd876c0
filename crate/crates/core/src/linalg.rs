//! Dense exact matrices over `Q`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(JetError::Parse("ragged matrix".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[_]>::to_vec)
            .take(self.rows)
            .collect()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Row echelon form by fraction-free pivoting; returns the reduced matrix, the pivot
    /// columns and the sign of the row permutation.
    fn echelon(&self) -> (Matrix, Vec<usize>, bool) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, row * a.cols + j);
                }
                odd = !odd;
            }
            let inv = Rational::one() / &a[(row, col)];
            for i in (row + 1)..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] * &inv;
                for j in col..a.cols {
                    let v = &a[(row, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let (a, pivots, odd) = self.echelon();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let mut d = Rational::one();
        for i in 0..self.rows {
            d *= &a[(i, i)];
        }
        if odd {
            -d
        } else {
            d
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let piv = Rational::one() / &a[(col, col)];
            for j in 0..n {
                a[(col, j)] *= &piv;
                inv[(col, j)] *= &piv;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let va = &a[(col, j)] * &f;
                    a[(i, j)] -= va;
                    let vi = &inv[(col, j)] * &f;
                    inv[(i, j)] -= vi;
                }
            }
        }
        Some(inv)
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        // reduced row echelon form
        let (mut a, pivots, _) = self.echelon();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = Rational::one() / &a[(r, c)];
            for j in 0..a.cols {
                a[(r, j)] *= &inv;
            }
            for i in 0..r {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..a.cols {
                    let v = &a[(r, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
        }
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); a.cols];
                x[f] = Rational::one();
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = -a[(r, f)].clone();
                }
                x
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero()
                    && (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(rational::format).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        let s = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), int(0));
        assert!(s.inverse().is_none());
        let p = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), int(-1));
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k, vec![vec![int(0), int(-1), int(1)]]);
        let z = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(z.rank(), 1);
        let h = Matrix::from_rows(vec![vec![frac(1, 2), int(3)]]).unwrap();
        assert_eq!(h.kernel(), vec![vec![int(-6), int(1)]]);
    }
}
