//! Jet spaces of affine schemes in explicit coordinates.
//!
//! For `S = V(f_1..f_k) ⊂ A^n`, a jet `D^d_r -> A^n` is `n` series `Σ_p a_{p,i} t^p`, so
//! `J^d_r A^n` is affine space on the `n * ell` coordinates `a_{p,i}` (`ell = C(r+d, d)`).
//! Variables of a [`PolySystem`] are ordered component-outer, monomial-inner; the coordinate
//! for `(i, p)` is named `{name_i}_{p_1}_..._{p_d}`, so `a_{0,i}` is `{name_i}_0_.._0`.
//!
//! Two constructions are provided for both the equations of `J^d_r S` and the prolongation of
//! a polynomial map: direct substitution of the generic jet, and the Taylor route that
//! expands at the symbolic base point through partial derivatives of the generators.

mod equations;
mod predicates;
mod witness;

use crate::error::{JetError, Result};
use crate::jet_algebra::{monomial_count, MultiIndex, Series};
use crate::poly::Polynomial;
use crate::rational::Rational;

pub use equations::{
    apply_prolonged, jet_prolong, jet_prolong_universal, jet_space_equations,
    jet_space_equations_universal,
};
pub use predicates::{is_compatible, is_nondegenerate, jet_membership};
pub use witness::{
    dimension_witness, DimensionReport, OrderRecord, Parametrization, WitnessSearch, WitnessSource,
};

/// Closed subscheme of `A^n` cut out by polynomial generators.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineScheme {
    variables: Vec<String>,
    generators: Vec<Polynomial>,
}

impl AffineScheme {
    pub fn new(variables: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        let n = variables.len();
        for g in &generators {
            if g.arity() > n {
                return Err(JetError::ArityMismatch {
                    expected: n,
                    found: g.arity(),
                });
            }
        }
        Ok(AffineScheme {
            variables,
            generators,
        })
    }

    /// `A^n` with default variable names `x1..xn`.
    pub fn affine_space(n: usize) -> Self {
        AffineScheme {
            variables: (1..=n).map(|i| format!("x{i}")).collect(),
            generators: Vec::new(),
        }
    }

    pub fn parse(variables: &[&str], generators: &[&str]) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| crate::poly::parse_polynomial(g, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, gens)
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `true` if every generator vanishes at `x`.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.n() {
            return Err(JetError::ArityMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        for g in &self.generators {
            if !num_traits::Zero::is_zero(&g.eval(x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Polynomial equations in named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub variables: Vec<String>,
    pub equations: Vec<Polynomial>,
}

impl PolySystem {
    /// Every equation cleared of denominators and content, leading coefficient positive.
    pub fn normalized(&self) -> PolySystem {
        PolySystem {
            variables: self.variables.clone(),
            equations: self.equations.iter().map(Polynomial::normalized).collect(),
        }
    }

    pub fn equation_texts(&self) -> Vec<String> {
        self.equations
            .iter()
            .map(|e| e.to_text(&self.variables))
            .collect()
    }
}

/// Polynomial map `A^n -> A^m` given by its `m` components in `n` named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    pub variables: Vec<String>,
    pub components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(variables: Vec<String>, components: Vec<Polynomial>) -> Result<Self> {
        for c in &components {
            if c.arity() > variables.len() {
                return Err(JetError::ArityMismatch {
                    expected: variables.len(),
                    found: c.arity(),
                });
            }
        }
        Ok(PolyMap {
            variables,
            components,
        })
    }

    pub fn parse(variables: &[&str], components: &[&str]) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let comps = components
            .iter()
            .map(|c| crate::poly::parse_polynomial(c, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, comps)
    }

    pub fn identity(variables: Vec<String>) -> Self {
        let components = (0..variables.len()).map(Polynomial::var).collect();
        PolyMap {
            variables,
            components,
        }
    }

    pub fn source_arity(&self) -> usize {
        self.variables.len()
    }

    pub fn target_arity(&self) -> usize {
        self.components.len()
    }

    pub fn apply(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        if point.len() != self.source_arity() {
            return Err(JetError::ArityMismatch {
                expected: self.source_arity(),
                found: point.len(),
            });
        }
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// `self ∘ inner`, with `inner`'s source variables.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.target_arity() != self.source_arity() {
            return Err(JetError::ArityMismatch {
                expected: self.source_arity(),
                found: inner.target_arity(),
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap {
            variables: inner.variables.clone(),
            components,
        })
    }

    pub fn component_texts(&self) -> Vec<String> {
        self.components
            .iter()
            .map(|c| c.to_text(&self.variables))
            .collect()
    }
}

/// Names of the jet coordinates over base names, component outer and monomial inner.
pub fn jet_coordinate_names(base: &[String], dims: usize, order: u32) -> Vec<String> {
    let indices = MultiIndex::all(dims, order);
    let mut out = Vec::with_capacity(base.len() * indices.len());
    for name in base {
        for p in &indices {
            let suffix: Vec<String> = p.exps().iter().map(u32::to_string).collect();
            out.push(format!("{name}_{}", suffix.join("_")));
        }
    }
    out
}

/// Index of the coordinate `a_{p,i}` in the ordering of [`jet_coordinate_names`].
pub fn jet_coordinate_index(i: usize, p: &MultiIndex, dims: usize, order: u32) -> usize {
    i * monomial_count(dims, order) + p.position()
}

/// The generic jet: component `i` is `Σ_p a_{p,i} t^p` with each coefficient a variable.
pub fn generic_jet(n: usize, dims: usize, order: u32) -> Vec<Series<Polynomial>> {
    let indices = MultiIndex::all(dims, order);
    (0..n)
        .map(|i| {
            let mut s = Series::zero(dims, order);
            for p in &indices {
                s.set(
                    p.clone(),
                    Polynomial::var(jet_coordinate_index(i, p, dims, order)),
                );
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_names_follow_component_then_monomial() {
        let names = jet_coordinate_names(&["x".into(), "y".into()], 1, 1);
        assert_eq!(names, vec!["x_0", "x_1", "y_0", "y_1"]);
        let names = jet_coordinate_names(&["z".into()], 2, 1);
        assert_eq!(names, vec!["z_0_0", "z_1_0", "z_0_1"]);
    }

    #[test]
    fn map_composition() {
        let g = PolyMap::parse(&["x", "y"], &["x*y"]).unwrap();
        let h = PolyMap::parse(&["u"], &["u + 1", "u - 1"]).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh, PolyMap::parse(&["u"], &["u^2 - 1"]).unwrap());
        assert!(g.compose(&g).is_err());
    }
}
