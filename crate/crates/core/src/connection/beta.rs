use num_traits::Zero;

use super::chart::ConnectionChart;
use super::matrix_jet::MatrixJet;
use super::oracle::pulled_back_system;
use super::xi::{build_xi, XiTable};
use crate::error::{JetError, Result};
use crate::jet_algebra::{JetPoint, MultiIndex, TruncatedSeries};
use crate::linalg::Matrix;
use crate::rational::Rational;

fn check_inputs(chart: &ConnectionChart, sigma: &JetPoint, init: &Matrix) -> Result<()> {
    if sigma.arity() != chart.n() {
        return Err(JetError::ArityMismatch {
            expected: chart.n(),
            found: sigma.arity(),
        });
    }
    if init.rows() != chart.m() || init.cols() != chart.m() || init.det().is_zero() {
        return Err(JetError::SingularInitial);
    }
    chart.check_point(&sigma.basepoint())
}

/// The order-`r` jet of the flat frame with value `M` at `σ(0)`, pulled back along `σ`:
///
/// ```text
/// β(σ, M) = Σ_{|α| ≤ r} Ξ_α(s) M / α! · (σ - s)^α,   s = σ(0)
/// ```
pub fn beta(chart: &ConnectionChart, sigma: &JetPoint, init: &Matrix) -> Result<MatrixJet> {
    check_inputs(chart, sigma, init)?;
    build_xi(chart, sigma.order()).beta_unchecked(sigma, init)
}

impl XiTable {
    /// [`beta`] reusing a prebuilt table, which must cover the order of `σ`.
    pub fn beta(
        &self,
        chart: &ConnectionChart,
        sigma: &JetPoint,
        init: &Matrix,
    ) -> Result<MatrixJet> {
        check_inputs(chart, sigma, init)?;
        if sigma.order() > self.order() {
            return Err(JetError::OrderIncrease {
                from: self.order(),
                to: sigma.order(),
            });
        }
        self.beta_unchecked(sigma, init)
    }

    /// No check on `M`; `β` is linear in `M`, so any `m × k` matrix is accepted.
    pub(crate) fn beta_unchecked(&self, sigma: &JetPoint, init: &Matrix) -> Result<MatrixJet> {
        let s = sigma.basepoint();
        let dval = self.denominator().eval(&s)?;
        if dval.is_zero() {
            return Err(JetError::SingularPoint(
                "connection denominator vanishes at the base point".into(),
            ));
        }
        let (d, r) = (sigma.dims(), sigma.order());
        let n = self.n();
        let offsets: Vec<TruncatedSeries> =
            sigma.series().iter().map(TruncatedSeries::offset).collect();
        let mut powers: std::collections::BTreeMap<MultiIndex, TruncatedSeries> =
            Default::default();
        powers.insert(MultiIndex::zero(n), TruncatedSeries::one(d, r));
        let mut out = MatrixJet::zeros(self.m(), init.cols(), d, r);
        for alpha in MultiIndex::all(n, r) {
            if !alpha.is_zero() {
                let l = alpha.exps().iter().position(|&e| e > 0).unwrap();
                let prev = alpha.checked_sub(&MultiIndex::unit(n, l)).unwrap();
                let p = &powers[&prev] * &offsets[l];
                powers.insert(alpha.clone(), p);
            }
            let power = &powers[&alpha];
            if power.is_zero() {
                continue;
            }
            let fact = Rational::from_integer(alpha.factorial());
            let coeff = (&self.eval_with(&alpha, &s, &dval)? * init).scale(&fact.recip());
            for j in 0..out.rows() {
                for k in 0..out.cols() {
                    if !coeff[(j, k)].is_zero() {
                        let e = out.entry_mut(j, k);
                        *e = &*e + &power.scale(&coeff[(j, k)]);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `β(σ, M·A) = β(σ, M)·A`.
pub fn check_right_equivariance(
    chart: &ConnectionChart,
    sigma: &JetPoint,
    init: &Matrix,
    a: &Matrix,
) -> Result<bool> {
    if !a.is_square() || a.det().is_zero() {
        return Err(JetError::SingularInitial);
    }
    let table = build_xi(chart, sigma.order());
    let lhs = table.beta(chart, sigma, &(init * a))?;
    let rhs = table.beta(chart, sigma, init)?.mul_matrix(a)?;
    Ok(lhs == rhs)
}

/// `∂_{t_a} F - B_a F` truncated to order `r - 1`, one matrix per tangent direction, where
/// `B_a` is the connection pulled back along `σ`. All vanish exactly when `F` is flat along
/// `σ`.
pub fn flatness_residual(
    chart: &ConnectionChart,
    sigma: &JetPoint,
    f: &MatrixJet,
) -> Result<Vec<MatrixJet>> {
    let r = sigma.order();
    if r == 0 {
        return Err(JetError::OrderTooLow(0));
    }
    if (f.dims(), f.order()) != (sigma.dims(), r) {
        return Err(JetError::shape((sigma.dims(), r), (f.dims(), f.order())));
    }
    chart.check_point(&sigma.basepoint())?;
    let b = pulled_back_system(chart, sigma)?;
    let mut out = Vec::with_capacity(sigma.dims());
    for (a, ba) in b.iter().enumerate() {
        let lhs = f.derive(a)?;
        let rhs = ba.mul(f)?.restrict(r - 1)?;
        out.push(lhs.sub(&rhs)?);
    }
    Ok(out)
}

pub fn is_flat_along(chart: &ConnectionChart, sigma: &JetPoint, f: &MatrixJet) -> Result<bool> {
    Ok(flatness_residual(chart, sigma, f)?
        .iter()
        .all(MatrixJet::is_zero))
}
