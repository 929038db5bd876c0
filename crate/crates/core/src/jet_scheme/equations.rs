use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{
    generic_jet, jet_coordinate_index, jet_coordinate_names, AffineScheme, PolyMap, PolySystem,
};
use crate::error::{JetError, Result};
use crate::jet_algebra::{series_compose, JetPoint, MultiIndex, Series};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Coefficients of `t^p`, `p` in increasing order, of each expanded series.
fn coefficients(expanded: &[Series<Polynomial>], dims: usize, order: u32) -> Vec<Polynomial> {
    let indices = MultiIndex::all(dims, order);
    expanded
        .iter()
        .flat_map(|s| indices.iter().map(move |p| s.coeff(p)))
        .collect()
}

/// Equations of `J^d_r S` obtained by substituting the generic jet into every generator and
/// reading off the coefficient of each `t^p` with `|p| <= r`. There are `ell * k` of them,
/// generator outer and monomial inner, each normalized.
pub fn jet_space_equations(scheme: &AffineScheme, dims: usize, order: u32) -> Result<PolySystem> {
    let generic = generic_jet(scheme.n(), dims, order);
    let expanded = if scheme.n() == 0 {
        scheme
            .generators()
            .iter()
            .map(|g| Series::constant(dims, order, g.clone()))
            .collect()
    } else {
        scheme
            .generators()
            .iter()
            .map(|g| series_compose(g, &generic))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(PolySystem {
        variables: jet_coordinate_names(scheme.variables(), dims, order),
        equations: coefficients(&expanded, dims, order)
            .iter()
            .map(Polynomial::normalized)
            .collect(),
    })
}

/// Same system, computed from the Taylor expansion of each generator at the symbolic base
/// point `(a_{0,1}, .., a_{0,n})` composed with the offset jet `σ - π(σ)`.
pub fn jet_space_equations_universal(
    scheme: &AffineScheme,
    dims: usize,
    order: u32,
) -> Result<PolySystem> {
    let n = scheme.n();
    let expanded = scheme
        .generators()
        .iter()
        .map(|g| taylor_expand(g, n, dims, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolySystem {
        variables: jet_coordinate_names(scheme.variables(), dims, order),
        equations: coefficients(&expanded, dims, order)
            .iter()
            .map(Polynomial::normalized)
            .collect(),
    })
}

/// Prolongation `J^d_r g : J^d_r A^n -> J^d_r A^m` by direct substitution. Component `(j, p)`
/// is the coefficient of `t^p` in `g_j(σ)`; no normalization is applied.
pub fn jet_prolong(map: &PolyMap, dims: usize, order: u32) -> Result<PolyMap> {
    let n = map.source_arity();
    let generic = generic_jet(n, dims, order);
    let expanded = map
        .components
        .iter()
        .map(|g| {
            if n == 0 {
                Ok(Series::constant(dims, order, g.clone()))
            } else {
                series_compose(g, &generic)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(
        jet_coordinate_names(&map.variables, dims, order),
        coefficients(&expanded, dims, order),
    )
}

/// Prolongation through the Taylor route; must agree with [`jet_prolong`] term by term.
pub fn jet_prolong_universal(map: &PolyMap, dims: usize, order: u32) -> Result<PolyMap> {
    let n = map.source_arity();
    let expanded = map
        .components
        .iter()
        .map(|g| taylor_expand(g, n, dims, order))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(
        jet_coordinate_names(&map.variables, dims, order),
        coefficients(&expanded, dims, order),
    )
}

/// `Σ_{|α| <= r} (∂^α f)(a_0) / α! · Π_i (σ_i - a_{0,i})^{α_i}` in the generic jet ring.
fn taylor_expand(f: &Polynomial, n: usize, dims: usize, order: u32) -> Result<Series<Polynomial>> {
    if f.arity() > n {
        return Err(JetError::ArityMismatch {
            expected: n,
            found: f.arity(),
        });
    }
    let base = MultiIndex::zero(dims);
    let to_base = |v: usize| jet_coordinate_index(v, &base, dims, order);
    let offsets: Vec<Series<Polynomial>> = generic_jet(n, dims, order)
        .iter()
        .map(Series::offset)
        .collect();

    let mut out = Series::zero(dims, order);
    let mut offset_powers: BTreeMap<(usize, u32), Series<Polynomial>> = BTreeMap::new();
    // derivatives indexed by α over the n base variables
    let mut derivatives: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
    for alpha in MultiIndex::all(n, order) {
        let d = if alpha.is_zero() {
            f.clone()
        } else {
            let v = alpha.exps().iter().position(|&e| e > 0).expect("nonzero");
            let parent = alpha
                .checked_sub(&MultiIndex::unit(n, v))
                .expect("positive entry");
            derivatives[&parent].derive(v)
        };
        derivatives.insert(alpha.clone(), d.clone());
        if d.is_zero() {
            continue;
        }
        let coeff = d
            .rename(to_base)
            .scale(&(Rational::one() / Rational::from_integer(alpha.factorial())));
        let mut term = Series::constant(dims, order, coeff);
        for (v, &e) in alpha.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = offset_powers
                .entry((v, e))
                .or_insert_with(|| offsets[v].pow(e));
            term = &term * pw;
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Applies a prolonged map (as returned by [`jet_prolong`]) to a jet, returning the image jet.
pub fn apply_prolonged(prolonged: &PolyMap, jet: &JetPoint) -> Result<JetPoint> {
    let coords = jet.coordinates();
    let image = prolonged.apply(&coords)?;
    let ell = jet.ell();
    if ell == 0 || image.len() % ell != 0 {
        return Err(JetError::ArityMismatch {
            expected: ell,
            found: image.len(),
        });
    }
    JetPoint::from_coordinates(image.len() / ell, jet.dims(), jet.order(), &image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::TruncatedSeries;
    use crate::poly::parse_polynomial;

    fn parse_in(vars: &[String], texts: &[&str]) -> Vec<Polynomial> {
        texts
            .iter()
            .map(|t| parse_polynomial(t, vars).unwrap())
            .collect()
    }

    #[test]
    fn circle_first_order() {
        let s = AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"]).unwrap();
        let sys = jet_space_equations(&s, 1, 1).unwrap();
        assert_eq!(sys.variables, vec!["x_0", "x_1", "y_0", "y_1"]);
        // 2 x x' + 2 y y' normalizes to x x' + y y'
        let expected = parse_in(&sys.variables, &["x_0^2 + y_0^2 - 1", "x_0*x_1 + y_0*y_1"]);
        assert_eq!(sys.equations, expected);
        assert_eq!(sys, jet_space_equations_universal(&s, 1, 1).unwrap());
    }

    #[test]
    fn affine_space_has_no_equations() {
        let s = AffineScheme::affine_space(3);
        assert!(jet_space_equations(&s, 2, 3).unwrap().equations.is_empty());
    }

    #[test]
    fn node_second_order_uses_raw_coefficients() {
        let s = AffineScheme::parse(&["x", "y"], &["x*y"]).unwrap();
        let sys = jet_space_equations(&s, 1, 2).unwrap();
        let expected = parse_in(
            &sys.variables,
            &[
                "x_0*y_0",
                "x_0*y_1 + x_1*y_0",
                "x_0*y_2 + x_1*y_1 + x_2*y_0",
            ],
        );
        assert_eq!(sys.equations, expected);
    }

    #[test]
    fn order_zero_reproduces_generators() {
        let s = AffineScheme::parse(&["x", "y"], &["x^3 - y^2", "x*y - 2"]).unwrap();
        let sys = jet_space_equations(&s, 2, 0).unwrap();
        let renamed: Vec<Polynomial> = s.generators().iter().map(Polynomial::normalized).collect();
        assert_eq!(sys.equations, renamed);
    }

    #[test]
    fn squaring_prolongation() {
        let g = PolyMap::parse(&["x"], &["x^2"]).unwrap();
        let p = jet_prolong(&g, 1, 1).unwrap();
        assert_eq!(p.component_texts(), vec!["x_0^2", "2*x_0*x_1"]);
        assert_eq!(p, jet_prolong_universal(&g, 1, 1).unwrap());
    }

    #[test]
    fn identity_prolongs_to_identity() {
        let id = PolyMap::identity(vec!["x".into(), "y".into()]);
        let p = jet_prolong(&id, 2, 2).unwrap();
        assert_eq!(p, PolyMap::identity(p.variables.clone()));
    }

    #[test]
    fn product_prolongation_on_a_jet() {
        let g = PolyMap::parse(&["x", "y"], &["x*y"]).unwrap();
        let p = jet_prolong(&g, 1, 2).unwrap();
        let j = JetPoint::new(vec![
            TruncatedSeries::parse("1 + t1", 1, 2).unwrap(),
            TruncatedSeries::parse("1 - t1", 1, 2).unwrap(),
        ])
        .unwrap();
        let image = apply_prolonged(&p, &j).unwrap();
        assert_eq!(
            image.component(0),
            &TruncatedSeries::parse("1 - t1^2", 1, 2).unwrap()
        );
    }

    #[test]
    fn linear_maps_agree_at_every_order() {
        let g = PolyMap::parse(&["x", "y"], &["2*x - 3*y + 1", "x"]).unwrap();
        for d in 1..=2 {
            for r in 0..=4 {
                assert_eq!(
                    jet_prolong(&g, d, r).unwrap(),
                    jet_prolong_universal(&g, d, r).unwrap()
                );
            }
        }
    }
}
