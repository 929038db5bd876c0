use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::hodge::{hr1_pairs, HodgeData};
use crate::linalg::Matrix;
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::Rational;

/// Affine chart with a filtration-compatible frame of rank `m`, its connection coefficients,
/// the Gram matrix of the polarization on the frame, and the reference lattice form `Q`.
#[derive(Clone, Debug)]
pub struct ConnectionChart {
    variables: Vec<String>,
    m: usize,
    weight: u32,
    filtration_dims: Vec<usize>,
    /// `c_{ij,l}` at `(i * m + j) * n + l`.
    coeffs: Vec<RationalFunction>,
    /// `Q(v^i, v^k)` at `i * m + k`.
    gram: Vec<RationalFunction>,
    polarization: Matrix,
    basepoints: BTreeMap<String, Vec<Rational>>,
}

impl ConnectionChart {
    /// `coeffs[i][j][l] = c_{ij,l}`; `gram[i][k] = Q(v^i, v^k)`; `polarization` must be an
    /// integer matrix.
    pub fn new(
        variables: Vec<String>,
        weight: u32,
        filtration_dims: Vec<usize>,
        coeffs: Vec<Vec<Vec<RationalFunction>>>,
        gram: Vec<Vec<RationalFunction>>,
        polarization: Matrix,
    ) -> Result<Self> {
        let n = variables.len();
        let m = coeffs.len();
        let bad = |msg: String| Err(JetError::InvalidChart(msg));
        if m == 0 {
            return bad("frame rank must be positive".into());
        }
        let mut flat = Vec::with_capacity(m * m * n);
        for row in &coeffs {
            if row.len() != m {
                return bad(format!(
                    "connection row has {} entries, expected {m}",
                    row.len()
                ));
            }
            for entry in row {
                if entry.len() != n {
                    return bad(format!(
                        "connection entry has {} components, expected {n}",
                        entry.len()
                    ));
                }
                for c in entry {
                    if c.arity() > n {
                        return bad("connection coefficient uses unknown variable".into());
                    }
                    flat.push(c.clone());
                }
            }
        }
        if gram.len() != m || gram.iter().any(|r| r.len() != m) {
            return bad(format!("gram matrix must be {m}x{m}"));
        }
        let gram: Vec<RationalFunction> = gram.into_iter().flatten().collect();
        if gram.iter().any(|g| g.arity() > n) {
            return bad("gram entry uses unknown variable".into());
        }
        HodgeData::new(m, weight, filtration_dims.clone(), polarization.clone())?;
        let sign = if weight.is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        };
        for i in 0..m {
            for k in 0..m {
                if gram[i * m + k] != gram[k * m + i].scale(&sign) {
                    return bad("gram matrix does not have the parity of the weight".into());
                }
            }
        }
        Ok(ConnectionChart {
            variables,
            m,
            weight,
            filtration_dims,
            coeffs: flat,
            gram,
            polarization,
            basepoints: BTreeMap::new(),
        })
    }

    /// Adds a named base point.
    pub fn with_basepoint(mut self, name: &str, point: Vec<Rational>) -> Result<Self> {
        if point.len() != self.n() {
            return Err(JetError::ArityMismatch {
                expected: self.n(),
                found: point.len(),
            });
        }
        self.basepoints.insert(name.to_string(), point);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn filtration_dims(&self) -> &[usize] {
        &self.filtration_dims
    }

    pub fn polarization(&self) -> &Matrix {
        &self.polarization
    }

    pub fn hodge_data(&self) -> HodgeData {
        HodgeData::new(
            self.m,
            self.weight,
            self.filtration_dims.clone(),
            self.polarization.clone(),
        )
        .expect("validated at construction")
    }

    pub fn basepoints(&self) -> &BTreeMap<String, Vec<Rational>> {
        &self.basepoints
    }

    /// `c_{ij,l}`.
    pub fn coeff(&self, i: usize, j: usize, l: usize) -> &RationalFunction {
        &self.coeffs[(i * self.m + j) * self.n() + l]
    }

    /// `Q(v^i, v^k)`.
    pub fn gram_entry(&self, i: usize, k: usize) -> &RationalFunction {
        &self.gram[i * self.m + k]
    }

    /// `A_l = -c_lᵀ`, row-major, so that `∂_l f = A_l f`.
    pub fn system_matrix(&self, l: usize) -> Vec<RationalFunction> {
        let m = self.m;
        let mut out = Vec::with_capacity(m * m);
        for j in 0..m {
            for i in 0..m {
                out.push(-self.coeff(i, j, l).clone());
            }
        }
        out
    }

    /// Errors with `SingularPoint` unless every coefficient and Gram denominator is nonzero
    /// at `s`.
    pub fn check_point(&self, s: &[Rational]) -> Result<()> {
        if s.len() != self.n() {
            return Err(JetError::ArityMismatch {
                expected: self.n(),
                found: s.len(),
            });
        }
        for (k, c) in self.coeffs.iter().chain(&self.gram).enumerate() {
            if c.denominator().eval(s)?.is_zero() {
                return Err(JetError::SingularPoint(format!(
                    "denominator of {} vanishes at the base point",
                    self.describe_entry(k)
                )));
            }
        }
        Ok(())
    }

    fn describe_entry(&self, k: usize) -> String {
        let (m, n) = (self.m, self.n());
        if k < self.coeffs.len() {
            let l = k % n;
            let ij = k / n;
            format!("c[{}][{}][{}]", ij / m + 1, ij % m + 1, l + 1)
        } else {
            let k = k - self.coeffs.len();
            format!("gram[{}][{}]", k / m + 1, k % m + 1)
        }
    }

    pub fn gram_at(&self, s: &[Rational]) -> Result<Matrix> {
        let m = self.m;
        let mut g = Matrix::zeros(m, m);
        for i in 0..m {
            for k in 0..m {
                g[(i, k)] = self.gram_entry(i, k).eval(s)?;
            }
        }
        Ok(g)
    }

    /// Product of the distinct normalized denominators, skipping any that already divide the
    /// running product. Every `c_{ij,l}` is `N / D` with `N` polynomial.
    pub fn common_denominator(&self) -> Polynomial {
        let mut dens: Vec<Polynomial> = self
            .coeffs
            .iter()
            .map(|c| c.denominator().clone())
            .filter(|d| !d.is_one())
            .collect();
        dens.sort_by_key(|d| std::cmp::Reverse(d.total_degree().unwrap_or(0)));
        let mut acc = Polynomial::one();
        for d in dens {
            if acc.div_exact(&d).is_none() {
                acc = &acc * &d;
            }
        }
        acc
    }

    /// Integrability of the flat-frame system:
    /// `∂_l A_k - ∂_k A_l + A_k A_l - A_l A_k = 0` for all `l < k`.
    /// Always true when `n = 1`.
    pub fn is_integrable(&self) -> bool {
        let m = self.m;
        let mats: Vec<Vec<RationalFunction>> =
            (0..self.n()).map(|l| self.system_matrix(l)).collect();
        for l in 0..self.n() {
            for k in (l + 1)..self.n() {
                for a in 0..m {
                    for b in 0..m {
                        let mut acc = &mats[k][a * m + b].derive(l) - &mats[l][a * m + b].derive(k);
                        for c in 0..m {
                            acc = &acc + &(&mats[k][a * m + c] * &mats[l][c * m + b]);
                            acc = &acc - &(&mats[l][a * m + c] * &mats[k][c * m + b]);
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The Gram matrix is flat: `∂_l G = c_l G + G c_lᵀ` for every `l`.
    pub fn gram_is_flat(&self) -> bool {
        let m = self.m;
        for l in 0..self.n() {
            for i in 0..m {
                for k in 0..m {
                    let mut rhs = RationalFunction::zero();
                    for j in 0..m {
                        rhs = &rhs + &(self.coeff(i, j, l) * self.gram_entry(j, k));
                        rhs = &rhs + &(self.gram_entry(i, j) * self.coeff(k, j, l));
                    }
                    if self.gram_entry(i, k).derive(l) != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The frame's own filtration satisfies the first Hodge-Riemann relation identically:
    /// `Q(v^a, v^b) = 0` whenever `v^a ∈ F^p` and `v^b ∈ F^{w-p+1}`.
    pub fn frame_satisfies_hr1(&self) -> bool {
        for (a_dim, b_dim) in hr1_pairs(self.weight, &self.filtration_dims) {
            for a in 0..a_dim {
                for b in 0..b_dim {
                    if !self.gram_entry(a, b).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
