use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::chart::ConnectionChart;
use crate::error::{JetError, Result};
use crate::jet_algebra::MultiIndex;
use crate::linalg::Matrix;
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::Rational;

/// Derivatives of a flat frame expressed through its value: `∂^α f = Ξ_α f` on the chart,
/// for all `|α| ≤ r`.
///
/// `Ξ_0 = I` and `Ξ_{α+e_l} = ∂_l Ξ_α - Ξ_α c_lᵀ`. Entries are kept over a single common
/// denominator: `Ξ_α = N_α / D^{|α|}` with polynomial `N_α`.
#[derive(Clone, Debug)]
pub struct XiTable {
    n: usize,
    m: usize,
    order: u32,
    denominator: Polynomial,
    numerators: BTreeMap<MultiIndex, Vec<Polynomial>>,
}

/// Builds the table up to order `r`. Each `Ξ_{α}` with `α ≠ 0` is reached from `α - e_l`
/// where `l` is the first index with `α_l > 0`.
pub fn build_xi(chart: &ConnectionChart, r: u32) -> XiTable {
    let (n, m) = (chart.n(), chart.m());
    let d = chart.common_denominator();
    // c_{ij,l} = cnum[l][i * m + j] / D
    let cnum: Vec<Vec<Polynomial>> = (0..n)
        .map(|l| {
            let mut out = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    let c = chart.coeff(i, j, l);
                    let cofactor = d
                        .div_exact(c.denominator())
                        .expect("common denominator is a multiple of every denominator");
                    out.push(c.numerator() * &cofactor);
                }
            }
            out
        })
        .collect();
    let dd: Vec<Polynomial> = (0..n).map(|l| d.derive(l)).collect();

    let mut numerators = BTreeMap::new();
    let mut id = vec![Polynomial::zero(); m * m];
    for i in 0..m {
        id[i * m + i] = Polynomial::one();
    }
    numerators.insert(MultiIndex::zero(n), id);
    for alpha in MultiIndex::all(n, r) {
        if alpha.is_zero() {
            continue;
        }
        let l = alpha.exps().iter().position(|&e| e > 0).unwrap();
        let prev_idx = alpha.checked_sub(&MultiIndex::unit(n, l)).unwrap();
        let k = Rational::from_integer(prev_idx.degree().into());
        let prev = &numerators[&prev_idx];
        let mut next = Vec::with_capacity(m * m);
        for j in 0..m {
            for i in 0..m {
                let nji = &prev[j * m + i];
                let mut acc = &(&d * &nji.derive(l)) - &(&dd[l] * nji).scale(&k);
                for q in 0..m {
                    // (N C_lᵀ)[j][i] = Σ_q N[j][q] C_l[i][q]
                    acc = &acc - &(&prev[j * m + q] * &cnum[l][i * m + q]);
                }
                next.push(acc);
            }
        }
        numerators.insert(alpha, next);
    }
    XiTable {
        n,
        m,
        order: r,
        denominator: d,
        numerators,
    }
}

impl XiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The common denominator `D`.
    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    fn numerator(&self, alpha: &MultiIndex) -> Result<&Vec<Polynomial>> {
        if alpha.dims() != self.n || alpha.degree() > self.order {
            return Err(JetError::IndexOutOfRange {
                index: alpha.degree() as usize,
                bound: self.order as usize,
            });
        }
        Ok(&self.numerators[alpha])
    }

    /// `Ξ_α[j][i]` as a rational function.
    pub fn entry(&self, alpha: &MultiIndex, j: usize, i: usize) -> Result<RationalFunction> {
        let num = self.numerator(alpha)?;
        RationalFunction::new(
            num[j * self.m + i].clone(),
            self.denominator.pow(alpha.degree()),
        )
    }

    /// `Ξ_α` row-major.
    pub fn matrix(&self, alpha: &MultiIndex) -> Result<Vec<RationalFunction>> {
        let mut out = Vec::with_capacity(self.m * self.m);
        for j in 0..self.m {
            for i in 0..self.m {
                out.push(self.entry(alpha, j, i)?);
            }
        }
        Ok(out)
    }

    /// `ξ_{α,jk} = Σ_i Ξ_α[j][i] f_ik` as a list of `((i, k), coefficient)` with nonzero
    /// coefficients.
    pub fn xi(
        &self,
        alpha: &MultiIndex,
        j: usize,
        k: usize,
    ) -> Result<Vec<((usize, usize), RationalFunction)>> {
        let mut out = Vec::new();
        for i in 0..self.m {
            let c = self.entry(alpha, j, i)?;
            if !c.is_zero() {
                out.push(((i, k), c));
            }
        }
        Ok(out)
    }

    /// `Ξ_α(s)`; `SingularPoint` if `D(s) = 0`.
    pub fn eval(&self, alpha: &MultiIndex, s: &[Rational]) -> Result<Matrix> {
        let dval = self.denominator.eval(s)?;
        if dval.is_zero() {
            return Err(JetError::SingularPoint(
                "connection denominator vanishes at the base point".into(),
            ));
        }
        self.eval_with(alpha, s, &dval)
    }

    pub(crate) fn eval_with(
        &self,
        alpha: &MultiIndex,
        s: &[Rational],
        dval: &Rational,
    ) -> Result<Matrix> {
        let num = self.numerator(alpha)?;
        let scale = Rational::one() / num_traits::pow(dval.clone(), alpha.degree() as usize);
        let m = self.m;
        let mut out = Matrix::zeros(m, m);
        for j in 0..m {
            for i in 0..m {
                out[(j, i)] = num[j * m + i].eval(s)? * &scale;
            }
        }
        Ok(out)
    }
}

/// `Ξ` along an explicit word of derivative directions, computed with rational-function
/// arithmetic: apply `X ↦ ∂_l X - X c_lᵀ` for each letter in turn, starting from `I`.
pub fn xi_along_word(chart: &ConnectionChart, word: &[usize]) -> Vec<RationalFunction> {
    let m = chart.m();
    let mut x = vec![RationalFunction::zero(); m * m];
    for i in 0..m {
        x[i * m + i] = RationalFunction::one();
    }
    for &l in word {
        let mut next = Vec::with_capacity(m * m);
        for j in 0..m {
            for i in 0..m {
                let mut acc = x[j * m + i].derive(l);
                for q in 0..m {
                    acc = &acc - &(&x[j * m + q] * chart.coeff(i, q, l));
                }
                next.push(acc);
            }
        }
        x = next;
    }
    x
}
