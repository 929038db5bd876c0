//! Floating-point positivity at a single point. Not part of the exact pipeline.

use num_complex::Complex64;

use super::HodgeData;
use crate::error::{JetError, Result};
use crate::rational::to_f64;

pub const POSITIVITY_TOLERANCE: f64 = 1e-9;

/// Weight one: the Hermitian form `H(a, b) = i · Q(w_a, conj(w_b))` on the given basis of
/// `F^1 ⊗ ℂ` must be positive definite. Checked by Cholesky with pivots above the tolerance.
pub fn weight_one_positive(h: &HodgeData, basis: &[Vec<Complex64>]) -> Result<bool> {
    if h.weight() != 1 {
        return Err(JetError::Unsupported(
            "positivity probe is implemented for weight one only".into(),
        ));
    }
    let m = h.m();
    if basis.iter().any(|w| w.len() != m) {
        return Err(JetError::ArityMismatch {
            expected: m,
            found: basis.iter().map(Vec::len).find(|&l| l != m).unwrap_or(0),
        });
    }
    let q = h.polarization();
    let g = basis.len();
    let mut herm = vec![Complex64::new(0.0, 0.0); g * g];
    for a in 0..g {
        for b in 0..g {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                for j in 0..m {
                    acc += basis[a][i] * to_f64(&q[(i, j)]) * basis[b][j].conj();
                }
            }
            herm[a * g + b] = Complex64::i() * acc;
        }
    }
    // Cholesky: H = L L*
    let mut l = vec![Complex64::new(0.0, 0.0); g * g];
    for j in 0..g {
        let mut d = herm[j * g + j];
        for k in 0..j {
            d -= l[j * g + k] * l[j * g + k].conj();
        }
        if d.re <= POSITIVITY_TOLERANCE {
            return Ok(false);
        }
        let djj = d.re.sqrt();
        l[j * g + j] = Complex64::new(djj, 0.0);
        for i in (j + 1)..g {
            let mut s = herm[i * g + j];
            for k in 0..j {
                s -= l[i * g + k] * l[j * g + k].conj();
            }
            l[i * g + j] = s / djj;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn upper_half_plane() {
        let h = HodgeData::new(2, 1, vec![2, 1], Matrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        let w = |tau: Complex64| vec![vec![Complex64::new(1.0, 0.0), tau]];
        assert!(weight_one_positive(&h, &w(Complex64::new(0.3, 1.0))).unwrap());
        assert!(!weight_one_positive(&h, &w(Complex64::new(0.3, -1.0))).unwrap());
        assert!(!weight_one_positive(&h, &w(Complex64::new(2.0, 0.0))).unwrap());
    }
}
