use super::AffineScheme;
use crate::error::{JetError, Result};
use crate::jet_algebra::{series_compose, JetPoint};
use crate::linalg::Matrix;

/// `true` iff every generator composed with the jet vanishes in `A^d_r`.
pub fn jet_membership(scheme: &AffineScheme, jet: &JetPoint) -> Result<bool> {
    if jet.arity() != scheme.n() {
        return Err(JetError::ArityMismatch {
            expected: scheme.n(),
            found: jet.arity(),
        });
    }
    for g in scheme.generators() {
        if !series_compose(g, jet.series())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `true` iff the `d` tangent vectors of the jet (the coefficients of `t_1..t_d`) are
/// linearly independent.
pub fn is_nondegenerate(jet: &JetPoint) -> Result<bool> {
    if jet.order() == 0 {
        return Err(JetError::OrderTooLow(0));
    }
    let rows = Matrix::from_rows(jet.tangent_vectors())?;
    Ok(rows.rank() == jet.dims())
}

/// `true` iff `high` restricts to `low`.
pub fn is_compatible(high: &JetPoint, low: &JetPoint) -> Result<bool> {
    if high.order() < low.order() {
        return Err(JetError::OrderMismatch {
            high: high.order(),
            low: low.order(),
        });
    }
    if high.dims() != low.dims() || high.arity() != low.arity() {
        return Err(JetError::ArityMismatch {
            expected: high.arity(),
            found: low.arity(),
        });
    }
    Ok(high.restrict(low.order())? == *low)
}
