//! Flags with polarization data: charts on the flag variety, the first Hodge-Riemann
//! relation, the torsor of polarization-normalizing frame changes, and the period-map jet
//! `α = flag(β^{-1})`.

mod congruence;
mod flag;
mod positivity;

pub use congruence::{diagonalize, solve_congruence, symplectic_basis, SEARCH_BOUND};
pub use flag::{chart_contains, check_hr1, flag_in_chart, flag_of_matrix, FlagChart, FlagJet};
pub use positivity::{weight_one_positive, POSITIVITY_TOLERANCE};

use num_traits::Zero;

use crate::connection::{beta, matrixjet_invert, series_oracle, ConnectionChart};
use crate::error::{JetError, Result};
use crate::jet_algebra::JetPoint;
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Weight, Hodge filtration dimensions and the integral polarization `Q` on `ℚ^m`.
///
/// `filtration_dims[p] = dim F^p` for `p = 0, 1, …`; pieces past the end are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct HodgeData {
    m: usize,
    weight: u32,
    filtration_dims: Vec<usize>,
    polarization: Matrix,
}

impl HodgeData {
    pub fn new(
        m: usize,
        weight: u32,
        filtration_dims: Vec<usize>,
        polarization: Matrix,
    ) -> Result<Self> {
        let bad = |msg: String| Err(JetError::InvalidHodgeData(msg));
        let dims = &filtration_dims;
        if dims.first() != Some(&m) {
            return bad(format!("filtration must start with the full rank {m}"));
        }
        if dims.windows(2).any(|w| w[0] <= w[1]) || dims.last() == Some(&0) {
            return bad("filtration dimensions must be strictly decreasing and positive".into());
        }
        if dims.len() > weight as usize + 1 {
            return bad(format!(
                "weight {weight} allows at most {} filtration steps",
                weight + 1
            ));
        }
        let q = &polarization;
        if q.rows() != m || q.cols() != m {
            return bad(format!("polarization must be {m}x{m}"));
        }
        if (0..m).any(|i| (0..m).any(|j| !q[(i, j)].is_integer())) {
            return bad("polarization must be integral".into());
        }
        let parity_ok = if weight.is_multiple_of(2) {
            q.is_symmetric()
        } else {
            q.is_alternating()
        };
        if !parity_ok {
            return bad("polarization must be (-1)^weight-symmetric".into());
        }
        if q.det().is_zero() {
            return bad("polarization is degenerate".into());
        }
        Ok(HodgeData {
            m,
            weight,
            filtration_dims,
            polarization,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn filtration_dims(&self) -> &[usize] {
        &self.filtration_dims
    }

    pub fn polarization(&self) -> &Matrix {
        &self.polarization
    }

    /// Proper nonzero filtration dimensions in increasing order: the flag type.
    pub fn flag_steps(&self) -> Vec<usize> {
        let mut steps: Vec<usize> = self
            .filtration_dims
            .iter()
            .copied()
            .filter(|&e| e > 0 && e < self.m)
            .collect();
        steps.reverse();
        steps
    }
}

/// Pairs `(dim F^p, dim F^{w-p+1})` for `p = 1..=w` where both pieces are nonzero.
pub(crate) fn hr1_pairs(weight: u32, dims: &[usize]) -> Vec<(usize, usize)> {
    let w = weight as usize;
    (1..=w)
        .filter_map(|p| {
            let a = dims.get(p).copied()?;
            let b = dims.get(w - p + 1).copied()?;
            Some((a, b))
        })
        .collect()
}

/// `Mᵀ · Gram(s) · M = Q`.
pub fn check_fv(chart: &ConnectionChart, s: &[Rational], m: &Matrix) -> Result<bool> {
    chart.check_point(s)?;
    if m.rows() != chart.m() || m.cols() != chart.m() {
        return Ok(false);
    }
    let g = chart.gram_at(s)?;
    Ok(&(&m.transpose() * &g) * m == *chart.polarization())
}

/// A jet together with a frame change in the torsor fibre over its base point.
#[derive(Clone, PartialEq, Debug)]
pub struct TorsorPoint {
    sigma: JetPoint,
    m: Matrix,
}

impl TorsorPoint {
    /// Errors with `NoRationalFvPoint` if `Mᵀ Gram M ≠ Q` at the base point.
    pub fn new(chart: &ConnectionChart, sigma: JetPoint, m: Matrix) -> Result<Self> {
        if !check_fv(chart, &sigma.basepoint(), &m)? {
            return Err(JetError::NoRationalFvPoint(
                "matrix does not normalize the polarization".into(),
            ));
        }
        Ok(TorsorPoint { sigma, m })
    }

    pub fn sigma(&self) -> &JetPoint {
        &self.sigma
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }
}

/// Period-map jet: the flag of the inverse flat-frame jet.
pub fn alpha(chart: &ConnectionChart, sigma: &JetPoint, m: &Matrix) -> Result<FlagJet> {
    let f = beta(chart, sigma, m)?;
    flag_of_matrix(&chart.hodge_data(), &matrixjet_invert(&f)?)
}

/// [`alpha`] computed from [`series_oracle`] instead of [`beta`].
pub fn alpha_via_oracle(chart: &ConnectionChart, sigma: &JetPoint, m: &Matrix) -> Result<FlagJet> {
    let f = series_oracle(chart, sigma, m)?;
    flag_of_matrix(&chart.hodge_data(), &matrixjet_invert(&f)?)
}

/// Fibre data over a jet: a canonical torsor point `M*` and `α(σ, M*)`.
#[derive(Clone, PartialEq, Debug)]
pub struct EtaWitness {
    pub m_star: Matrix,
    pub flag: FlagJet,
}

/// Chooses `M*` with `M*ᵀ Gram(π(j)) M* = Q` by [`solve_congruence`] and evaluates
/// [`alpha`] there.
pub fn eta_chartlocal(chart: &ConnectionChart, j: &JetPoint) -> Result<EtaWitness> {
    let s = j.basepoint();
    chart.check_point(&s)?;
    let g = chart.gram_at(&s)?;
    let m_star = solve_congruence(&g, chart.polarization())?;
    let flag = alpha(chart, j, &m_star)?;
    Ok(EtaWitness { m_star, flag })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::MatrixJet;
    use crate::jet_algebra::TruncatedSeries;

    fn weight_one() -> HodgeData {
        HodgeData::new(2, 1, vec![2, 1], Matrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    #[test]
    fn identity_flag() {
        let f = MatrixJet::identity(2, 1, 2);
        let flag = flag_of_matrix(&weight_one(), &f).unwrap();
        assert_eq!(flag.chart().pivot_set(0), vec![0]);
        assert_eq!(flag.chart().coordinate_names(), vec!["w2_1"]);
        assert!(flag.coords()[0].is_zero());
        assert!(check_hr1(&weight_one(), &flag));
    }

    #[test]
    fn period_ratio_slot() {
        let tau = TruncatedSeries::parse("1/3 + t1 - 2*t1^2", 1, 2).unwrap();
        let f = MatrixJet::from_rows(vec![
            vec![TruncatedSeries::one(1, 2), TruncatedSeries::zero(1, 2)],
            vec![tau.clone(), TruncatedSeries::one(1, 2)],
        ])
        .unwrap();
        let flag = flag_of_matrix(&weight_one(), &f).unwrap();
        assert_eq!(flag.coordinate(2, 1), Some(&tau));
    }

    #[test]
    fn weight_two_violation() {
        let q = Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let h = HodgeData::new(3, 2, vec![3, 2, 1], q).unwrap();
        assert_eq!(h.flag_steps(), vec![1, 2]);
        // F² = span(e1), F¹ = span(e1, e2): isotropic line inside its orthogonal
        let good = MatrixJet::identity(3, 1, 1);
        assert!(check_hr1(&h, &flag_of_matrix(&h, &good).unwrap()));
        // F¹ = span(e1, e3) pairs nontrivially with F²
        let bad = MatrixJet::constant(
            &Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            1,
            1,
        );
        assert!(!check_hr1(&h, &flag_of_matrix(&h, &bad).unwrap()));
    }

    #[test]
    fn hodge_data_validation() {
        let q = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
        assert!(HodgeData::new(2, 1, vec![2, 1], q.clone()).is_ok());
        assert!(HodgeData::new(2, 1, vec![2, 2], q.clone()).is_err());
        assert!(HodgeData::new(2, 0, vec![2, 1], q.clone()).is_err());
        assert!(HodgeData::new(2, 2, vec![2, 1], q).is_err());
        let half = Matrix::from_rows(vec![vec![crate::rational::frac(1, 2)]]).unwrap();
        assert!(HodgeData::new(1, 0, vec![1], half).is_err());
    }
}
