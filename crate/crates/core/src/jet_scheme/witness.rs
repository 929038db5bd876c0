//! Search for non-degenerate jets of `S` above a point, order by order.
//!
//! A found witness at every order up to `r_max` is evidence that `S` has dimension at least
//! `d` at the point. A missing witness proves nothing, and the report never claims otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::{is_nondegenerate, jet_membership};
use super::AffineScheme;
use crate::error::{JetError, Result};
use crate::jet_algebra::{JetPoint, TruncatedSeries};
use crate::linalg::Matrix;
use crate::poly::RationalFunction;
use crate::rational::{self, Rational};

/// A rational map `A^k -> A^n` together with a parameter value mapping to the base point.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub components: Vec<RationalFunction>,
    pub at: Vec<Rational>,
}

impl Parametrization {
    pub fn params(&self) -> usize {
        self.at.len()
    }

    /// The jet of the map along `u = at + L t`, `L` a `k x d` matrix.
    pub fn jet_along(&self, directions: &Matrix, order: u32) -> Result<JetPoint> {
        let k = self.params();
        let d = directions.cols();
        if directions.rows() != k {
            return Err(JetError::ArityMismatch {
                expected: k,
                found: directions.rows(),
            });
        }
        let u: Vec<TruncatedSeries> = (0..k)
            .map(|a| {
                let vectors: Vec<Vec<Rational>> =
                    (0..d).map(|b| vec![directions[(a, b)].clone()]).collect();
                JetPoint::linear(&[self.at[a].clone()], &vectors, order)
                    .map(|j| j.component(0).clone())
            })
            .collect::<Result<_>>()?;
        let comps = self
            .components
            .iter()
            .map(|c| c.compose_series(&u))
            .collect::<Result<Vec<_>>>()?;
        JetPoint::new(comps)
    }
}

#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub parametrizations: Vec<Parametrization>,
    /// Random reparametrizations tried per parametrization and order.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            parametrizations: Vec::new(),
            random_trials: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// Straight-line jet along a basis of the Zariski tangent space.
    TangentLines,
    /// Jet of the given parametrization (index into the search list).
    Parametrization(usize),
}

#[derive(Clone, Debug)]
pub struct OrderRecord {
    pub order: u32,
    pub witness: Option<JetPoint>,
    pub source: Option<WitnessSource>,
}

#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub dims: usize,
    pub records: Vec<OrderRecord>,
}

impl DimensionReport {
    /// Largest `r` such that witnesses were found at every order `1..=r`.
    pub fn max_order_found(&self) -> Option<u32> {
        let mut best = None;
        for rec in &self.records {
            if rec.witness.is_none() {
                break;
            }
            best = Some(rec.order);
        }
        best
    }

    pub fn found_at(&self, order: u32) -> bool {
        self.records
            .iter()
            .any(|r| r.order == order && r.witness.is_some())
    }
}

/// For each `r` in `1..=r_max`, looks for a non-degenerate `d`-dimensional jet of `scheme`
/// based at `x`.
pub fn dimension_witness(
    scheme: &AffineScheme,
    x: &[Rational],
    dims: usize,
    r_max: u32,
    search: &WitnessSearch,
) -> Result<DimensionReport> {
    if !scheme.contains(x)? {
        return Err(JetError::BasepointNotOnScheme);
    }
    let tangent = tangent_basis(scheme, x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut records = Vec::new();
    for order in 1..=r_max {
        let (witness, source) = match find_at(scheme, x, dims, order, &tangent, search, &mut rng)? {
            Some((j, s)) => (Some(j), Some(s)),
            None => (None, None),
        };
        records.push(OrderRecord {
            order,
            witness,
            source,
        });
    }
    Ok(DimensionReport { dims, records })
}

fn tangent_basis(scheme: &AffineScheme, x: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let n = scheme.n();
    if scheme.generators().is_empty() {
        return Ok(Matrix::identity(n).to_rows());
    }
    let rows = scheme
        .generators()
        .iter()
        .map(|g| {
            (0..n)
                .map(|v| g.derive(v).eval(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?.kernel())
}

fn accept(scheme: &AffineScheme, jet: &JetPoint) -> Result<bool> {
    Ok(jet_membership(scheme, jet)? && is_nondegenerate(jet)?)
}

fn find_at(
    scheme: &AffineScheme,
    x: &[Rational],
    dims: usize,
    order: u32,
    tangent: &[Vec<Rational>],
    search: &WitnessSearch,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(JetPoint, WitnessSource)>> {
    if tangent.len() >= dims {
        let lines = JetPoint::linear(x, &tangent[..dims], order)?;
        if accept(scheme, &lines)? {
            return Ok(Some((lines, WitnessSource::TangentLines)));
        }
    }
    for (idx, param) in search.parametrizations.iter().enumerate() {
        let k = param.params();
        if k < dims || param.components.len() != scheme.n() {
            continue;
        }
        let mut candidates = vec![first_coordinates(k, dims)];
        for _ in 0..search.random_trials {
            candidates.push(random_directions(k, dims, rng));
        }
        for l in candidates {
            let jet = match param.jet_along(&l, order) {
                Ok(j) => j,
                Err(JetError::SingularPoint(_)) => continue,
                Err(e) => return Err(e),
            };
            if jet.basepoint() != x {
                break;
            }
            if accept(scheme, &jet)? {
                return Ok(Some((jet, WitnessSource::Parametrization(idx))));
            }
        }
    }
    Ok(None)
}

fn first_coordinates(k: usize, d: usize) -> Matrix {
    let mut l = Matrix::zeros(k, d);
    for a in 0..d {
        l[(a, a)] = rational::int(1);
    }
    l
}

fn random_directions(k: usize, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut l = Matrix::zeros(k, d);
    for a in 0..k {
        for b in 0..d {
            l[(a, b)] = rational::int(rng.gen_range(-3..=3));
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::int;

    fn circle_param() -> Parametrization {
        let u = vec!["u".to_string()];
        let p = |s: &str| parse_polynomial(s, &u).unwrap();
        Parametrization {
            components: vec![
                RationalFunction::new(p("1 - u^2"), p("1 + u^2")).unwrap(),
                RationalFunction::new(p("2*u"), p("1 + u^2")).unwrap(),
            ],
            at: vec![int(0)],
        }
    }

    #[test]
    fn circle_has_curve_witnesses_only() {
        let circle = AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"]).unwrap();
        let search = WitnessSearch {
            parametrizations: vec![circle_param()],
            ..WitnessSearch::default()
        };
        let x = vec![int(1), int(0)];
        let one = dimension_witness(&circle, &x, 1, 4, &search).unwrap();
        assert_eq!(one.max_order_found(), Some(4));
        // order one is met by the tangent line, higher orders need the curve
        assert_eq!(one.records[0].source, Some(WitnessSource::TangentLines));
        assert_eq!(
            one.records[3].source,
            Some(WitnessSource::Parametrization(0))
        );
        let two = dimension_witness(&circle, &x, 2, 1, &search).unwrap();
        assert!(!two.found_at(1));
    }

    #[test]
    fn plane_has_two_dimensional_witnesses() {
        let plane = AffineScheme::affine_space(2);
        let report =
            dimension_witness(&plane, &[int(0), int(0)], 2, 5, &WitnessSearch::default()).unwrap();
        assert_eq!(report.max_order_found(), Some(5));
        let j = report.records[4].witness.as_ref().unwrap();
        assert_eq!(j.component(0), &TruncatedSeries::parse("t1", 2, 5).unwrap());
        assert_eq!(j.component(1), &TruncatedSeries::parse("t2", 2, 5).unwrap());
    }

    #[test]
    fn basepoint_must_lie_on_scheme() {
        let circle = AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"]).unwrap();
        let r = dimension_witness(&circle, &[int(0), int(0)], 1, 2, &WitnessSearch::default());
        assert!(matches!(r, Err(JetError::BasepointNotOnScheme)));
    }
}
