use std::collections::BTreeMap;

use num_traits::Zero;

use super::chart::ConnectionChart;
use super::matrix_jet::MatrixJet;
use crate::error::{JetError, Result};
use crate::jet_algebra::{JetPoint, MultiIndex, TruncatedSeries};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// `B_a = Σ_l (∂σ_l/∂t_a) · A_l(σ)` for each `a`, where `A_l = -c_lᵀ` is composed with `σ`.
/// The pulled-back system is `∂_{t_a} F = B_a F`.
pub(crate) fn pulled_back_system(
    chart: &ConnectionChart,
    sigma: &JetPoint,
) -> Result<Vec<MatrixJet>> {
    let (n, m) = (chart.n(), chart.m());
    let (d, r) = (sigma.dims(), sigma.order());
    let comps = sigma.series();
    let mut a_pulled = Vec::with_capacity(n);
    for l in 0..n {
        let a = chart.system_matrix(l);
        let mut entries = Vec::with_capacity(m * m);
        for rf in &a {
            entries.push(rf.compose_series(comps)?);
        }
        a_pulled.push(MatrixJet::from_fn(m, m, d, r, |i, j| {
            entries[i * m + j].clone()
        }));
    }
    let mut out = Vec::with_capacity(d);
    for a in 0..d {
        let mut b = MatrixJet::zeros(m, m, d, r);
        for (l, al) in a_pulled.iter().enumerate() {
            let ds = sigma.component(l).derive(a)?;
            let ds = MatrixJet::from_fn(m, m, d, r, |i, j| {
                if i == j {
                    ds.clone()
                } else {
                    TruncatedSeries::zero(d, r)
                }
            });
            b = b.add(&ds.mul(al)?)?;
        }
        out.push(b);
    }
    Ok(out)
}

fn coefficient_matrices(f: &MatrixJet) -> BTreeMap<MultiIndex, Matrix> {
    let mut out: BTreeMap<MultiIndex, Matrix> = BTreeMap::new();
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            for (p, c) in f.entry(i, j).terms() {
                out.entry(p.clone())
                    .or_insert_with(|| Matrix::zeros(f.rows(), f.cols()))[(i, j)] = c.clone();
            }
        }
    }
    out
}

/// Solves `∂_{t_a} F = B_a F`, `F(0) = M` degree by degree: for `p ≠ 0` take the first `a`
/// with `p_a > 0`, then `F_p = [t^{p - e_a}](B_a F) / p_a`. The initial matrix is not
/// required to be invertible.
pub(crate) fn solve_flat_frame(
    chart: &ConnectionChart,
    sigma: &JetPoint,
    init: &Matrix,
) -> Result<MatrixJet> {
    let m = chart.m();
    if sigma.arity() != chart.n() {
        return Err(JetError::ArityMismatch {
            expected: chart.n(),
            found: sigma.arity(),
        });
    }
    if init.rows() != m {
        return Err(JetError::ArityMismatch {
            expected: m,
            found: init.rows(),
        });
    }
    chart.check_point(&sigma.basepoint())?;
    let (d, r) = (sigma.dims(), sigma.order());
    let cols = init.cols();
    let b: Vec<BTreeMap<MultiIndex, Matrix>> = pulled_back_system(chart, sigma)?
        .iter()
        .map(coefficient_matrices)
        .collect();
    let mut f: BTreeMap<MultiIndex, Matrix> = BTreeMap::new();
    f.insert(MultiIndex::zero(d), init.clone());
    for p in MultiIndex::all(d, r) {
        if p.is_zero() {
            continue;
        }
        let a = p.exps().iter().position(|&e| e > 0).unwrap();
        let q = p.checked_sub(&MultiIndex::unit(d, a)).unwrap();
        let mut acc = Matrix::zeros(m, cols);
        for (u, bu) in &b[a] {
            if let Some(rest) = q.checked_sub(u) {
                if let Some(fr) = f.get(&rest) {
                    acc = acc.add(&(bu * fr));
                }
            }
        }
        let value = acc.scale(&(Rational::from_integer(p.exps()[a].into()).recip()));
        f.insert(p, value);
    }
    Ok(MatrixJet::from_fn(m, cols, d, r, |i, j| {
        let mut s = TruncatedSeries::zero(d, r);
        for (p, mat) in &f {
            if !mat[(i, j)].is_zero() {
                s.set(p.clone(), mat[(i, j)].clone());
            }
        }
        s
    }))
}

/// Flat frame along `σ` with initial value `M`, by solving the pulled-back linear system.
pub fn series_oracle(
    chart: &ConnectionChart,
    sigma: &JetPoint,
    init: &Matrix,
) -> Result<MatrixJet> {
    if !init.is_square() || init.det().is_zero() {
        return Err(JetError::SingularInitial);
    }
    solve_flat_frame(chart, sigma, init)
}
