//! Built-in connections: the Legendre family of elliptic curves and small synthetic charts.

use num_traits::{One, Zero};

use crate::connection::ConnectionChart;
use crate::error::{JetError, Result};
use crate::jet_algebra::{Series, TruncatedSeries};
use crate::jet_scheme::{AffineScheme, Parametrization};
use crate::linalg::Matrix;
use crate::poly::{parse_polynomial, Polynomial, RationalFunction};
use crate::rational::{self, frac, int, Rational};

/// A chart with named base points and, optionally, the Taylor coefficients at the origin of a
/// reference solution.
#[derive(Clone, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub chart: ConnectionChart,
    pub reference_coefficients: Option<fn(u32) -> Rational>,
}

impl NamedExample {
    pub fn basepoints(&self) -> Vec<(String, Vec<Rational>)> {
        self.chart
            .basepoints()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

pub fn all_examples() -> Vec<NamedExample> {
    vec![
        NamedExample {
            name: "legendre",
            chart: legendre_chart(),
            reference_coefficients: Some(hypergeometric_coefficient),
        },
        NamedExample {
            name: "exponential",
            chart: exponential_chart(),
            reference_coefficients: Some(exponential_coefficient),
        },
        NamedExample {
            name: "constant",
            chart: constant_chart(),
            reference_coefficients: None,
        },
        NamedExample {
            name: "weight-two",
            chart: weight_two_chart(),
            reference_coefficients: None,
        },
    ]
}

pub fn example_by_name(name: &str) -> Option<NamedExample> {
    all_examples().into_iter().find(|e| e.name == name)
}

fn rf(names: &[String], num: &str, den: &str) -> RationalFunction {
    RationalFunction::new(
        parse_polynomial(num, names).expect("fixture polynomial"),
        parse_polynomial(den, names).expect("fixture polynomial"),
    )
    .expect("nonzero denominator")
}

fn constant_rows(names: &[String], rows: &[&[&str]]) -> Vec<Vec<RationalFunction>> {
    rows.iter()
        .map(|r| r.iter().map(|e| rf(names, e, "1")).collect())
        .collect()
}

/// Legendre family `y² = x(x-1)(x-λ)` with frame `dx/y, x dx/y` on `λ ∉ {0, 1}`: weight 1,
/// rank 2, `F¹` spanned by `dx/y`, constant Gram matrix `[[0, 1], [-1, 0]]`.
pub fn legendre_chart() -> ConnectionChart {
    let names = vec!["lambda".to_string()];
    let c = |num: &str, den: &str| vec![rf(&names, num, den)];
    let coeffs = vec![
        vec![c("-1", "2*lambda - 2"), c("1", "2*lambda^2 - 2*lambda")],
        vec![c("-1", "2*lambda - 2"), c("1", "2*lambda - 2")],
    ];
    let q = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
    ConnectionChart::new(
        names.clone(),
        1,
        vec![2, 1],
        coeffs,
        constant_rows(&names, &[&["0", "1"], &["-1", "0"]]),
        q,
    )
    .expect("valid chart")
    .with_basepoint("half", vec![frac(1, 2)])
    .and_then(|c| c.with_basepoint("quarter", vec![frac(1, 4)]))
    .and_then(|c| c.with_basepoint("two", vec![int(2)]))
    .expect("one coordinate")
}

/// Rank one, `∇v = v dz`: flat sections are multiples of `e^{-z} v`.
pub fn exponential_chart() -> ConnectionChart {
    let names = vec!["z".to_string()];
    ConnectionChart::new(
        names.clone(),
        0,
        vec![1],
        vec![vec![vec![rf(&names, "1", "1")]]],
        constant_rows(&names, &[&["1"]]),
        Matrix::from_ints(&[&[1]]),
    )
    .expect("valid chart")
    .with_basepoint("origin", vec![int(0)])
    .and_then(|c| c.with_basepoint("one", vec![int(1)]))
    .expect("one coordinate")
}

/// Rank two, weight one, nilpotent constant connection `∇v^1 = v^2 dz`.
pub fn constant_chart() -> ConnectionChart {
    let names = vec!["z".to_string()];
    let c = |e: &str| vec![rf(&names, e, "1")];
    let coeffs = vec![vec![c("0"), c("1")], vec![c("0"), c("0")]];
    ConnectionChart::new(
        names.clone(),
        1,
        vec![2, 1],
        coeffs,
        constant_rows(&names, &[&["0", "1"], &["-1", "0"]]),
        Matrix::from_ints(&[&[0, 1], &[-1, 0]]),
    )
    .expect("valid chart")
    .with_basepoint("origin", vec![int(0)])
    .and_then(|c| c.with_basepoint("three", vec![int(3)]))
    .expect("one coordinate")
}

/// Rank three, weight two, Hodge numbers (1, 1, 1) with `Q` the antidiagonal form
/// `[[0, 0, 1], [0, -1, 0], [1, 0, 0]]`. The frame is a polynomial lower-unitriangular gauge
/// of an orthogonal connection, so the Gram matrix is flat but not constant.
pub fn weight_two_chart() -> ConnectionChart {
    let names = vec!["z".to_string()];
    let p = |s: &str| RationalFunction::polynomial(parse_polynomial(s, &names).expect("fixture"));
    let coeffs: Vec<Vec<Vec<RationalFunction>>> = [
        ["z^2 + 1", "-z", "0"],
        ["z^2 + 2*z + 1", "0", "-z"],
        ["-z^4 + z^2 - z + 2", "z^3 + z^2 + 1", "-z^2 - 1"],
    ]
    .iter()
    .map(|row| row.iter().map(|e| vec![p(e)]).collect())
    .collect();
    let gram = [["0", "0", "1"], ["0", "-1", "0"], ["1", "0", "2 - z^2"]]
        .iter()
        .map(|row| row.iter().map(|e| p(e)).collect())
        .collect();
    ConnectionChart::new(
        names,
        2,
        vec![3, 2, 1],
        coeffs,
        gram,
        Matrix::from_ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
    )
    .expect("valid chart")
    .with_basepoint("origin", vec![int(0)])
    .and_then(|c| c.with_basepoint("one", vec![int(1)]))
    .expect("one coordinate")
}

/// The unit circle `x² + y² = 1` with its base point `(1, 0)`.
pub fn circle() -> (AffineScheme, Vec<Rational>) {
    let s = AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"]).expect("fixture scheme");
    (s, vec![int(1), int(0)])
}

/// Stereographic parametrization `u ↦ ((1-u²)/(1+u²), 2u/(1+u²))`, sending `u = 0` to `(1, 0)`.
pub fn circle_parametrization() -> Parametrization {
    let u = vec!["u".to_string()];
    Parametrization {
        components: vec![rf(&u, "1 - u^2", "1 + u^2"), rf(&u, "2*u", "1 + u^2")],
        at: vec![int(0)],
    }
}

/// `((1/2)_k / k!)²`, the coefficients of `₂F₁(1/2, 1/2; 1; λ)` at `λ = 0`.
pub fn hypergeometric_coefficient(k: u32) -> Rational {
    let mut c = Rational::one();
    for j in 0..k {
        let f = frac(2 * j as i64 + 1, 2 * (j as i64 + 1));
        c = c * &f * &f;
    }
    c
}

fn exponential_coefficient(k: u32) -> Rational {
    let s = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    s / rational::factorial(k)
}

/// The two solutions `A, B` of `λ(1-λ)y'' + (1-2λ)y' - y/4 = 0` in `t = λ - λ₀` with
/// `A = 1 + O(t²)`, `B = t + O(t²)`, truncated at order `r`.
pub fn pf_solution_basis(lambda0: &Rational, r: u32) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let p0 = lambda0 * (Rational::one() - lambda0);
    if p0.is_zero() {
        return Err(JetError::SingularPoint(format!(
            "λ = {} is a singular point of the Picard-Fuchs equation",
            rational::format(lambda0)
        )));
    }
    let p1 = Rational::one() - lambda0 * int(2);
    let p2 = int(-1);
    let q0 = p1.clone();
    let q1 = int(-2);
    let quarter = frac(1, 4);
    let solve = |a0: Rational, a1: Rational| {
        let mut a = vec![a0, a1];
        let mut n = 0usize;
        while a.len() <= r as usize {
            let nn = int(n as i64);
            let n1 = int(n as i64 + 1);
            let n2 = int(n as i64 + 2);
            let rest = &p1 * &n1 * &nn * &a[n + 1]
                + &p2 * &nn * (&nn - int(1)) * &a[n]
                + &q0 * &n1 * &a[n + 1]
                + &q1 * &nn * &a[n]
                - &quarter * &a[n];
            a.push(-rest / (&p0 * n2 * n1));
            n += 1;
        }
        let mut s = TruncatedSeries::zero(1, r);
        for (k, c) in a.into_iter().enumerate().take(r as usize + 1) {
            s.set(crate::jet_algebra::MultiIndex::new(vec![k as u32]), c);
        }
        s
    };
    Ok((solve(int(1), int(0)), solve(int(0), int(1))))
}

/// The general order-`r` solution jet at `λ₀`, linear in the initial values `y0 = y(λ₀)`,
/// `y1 = y'(λ₀)` (variables 0 and 1 of the coefficient polynomials).
pub fn hypergeometric_jet(lambda0: &Rational, r: u32) -> Result<Series<Polynomial>> {
    let (a, b) = pf_solution_basis(lambda0, r)?;
    let y0 = Polynomial::var(0);
    let y1 = Polynomial::var(1);
    let a = a.map_coeffs(|c| y0.scale(c));
    let b = b.map_coeffs(|c| y1.scale(c));
    Ok(&a + &b)
}

/// For a rank-two, one-variable chart, the coefficients `(p, q)` of the scalar equation
/// `y'' = p y' + q y` satisfied by row `row` of every flat frame.
pub fn second_order_elimination(
    chart: &ConnectionChart,
    row: usize,
) -> Result<(RationalFunction, RationalFunction)> {
    if chart.m() != 2 || chart.n() != 1 || row > 1 {
        return Err(JetError::Unsupported(
            "elimination needs a rank-two chart in one variable".into(),
        ));
    }
    let other = 1 - row;
    // y' = a x + b y and x' = e x + g y, from ∂f = -cᵀ f
    let a = -chart.coeff(other, row, 0).clone();
    let b = -chart.coeff(row, row, 0).clone();
    let e = -chart.coeff(other, other, 0).clone();
    let g = -chart.coeff(row, other, 0).clone();
    if a.is_zero() {
        return Err(JetError::Unsupported("rows decouple".into()));
    }
    let u = &(&a.derive(0) + &(&a * &e)) * &a.inverse()?;
    let p = &u + &b;
    let q = &(&(&a * &g) + &b.derive(0)) - &(&u * &b);
    Ok((p, q))
}

/// The row-two entries of `β(λ₀ + t, I)` on the Legendre chart predicted by the scalar
/// equation: `y0 = f_2k(λ₀)`, `y1 = -c12(λ₀) f_1k - c22(λ₀) f_2k`, so the coefficient of
/// `f_1k` is `-c12 B` and that of `f_2k` is `A - c22 B`.
pub fn legendre_frame_row(lambda0: &Rational, r: u32) -> Result<[TruncatedSeries; 2]> {
    let (a, b) = pf_solution_basis(lambda0, r)?;
    let chart = legendre_chart();
    let at = [lambda0.clone()];
    let c12 = chart.coeff(0, 1, 0).eval(&at)?;
    let c22 = chart.coeff(1, 1, 0).eval(&at)?;
    Ok([b.scale(&-c12), &a - &b.scale(&c22)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{beta, MatrixJet};
    use crate::jet_algebra::{JetPoint, MultiIndex};

    #[test]
    fn legendre_structure() {
        let chart = legendre_chart();
        assert!(chart.gram_is_flat());
        assert!(chart.frame_satisfies_hr1());
        let poles = chart.common_denominator();
        let names = vec!["lambda".to_string()];
        assert_eq!(
            poles,
            parse_polynomial("lambda^2 - lambda", &names).unwrap()
        );
        for s in [0, 1] {
            assert!(chart.check_point(&[int(s)]).is_err());
        }
        assert!(chart.check_point(&[int(2)]).is_ok());
    }

    #[test]
    fn elimination_gives_picard_fuchs() {
        let chart = legendre_chart();
        let names = vec!["lambda".to_string()];
        let lead = rf(&names, "lambda - lambda^2", "1");
        // second frame row: λ(1-λ) y'' + (1-2λ) y' - y/4 = 0
        let (p, q) = second_order_elimination(&chart, 1).unwrap();
        assert_eq!(&p * &lead, rf(&names, "2*lambda - 1", "1"));
        assert_eq!(&q * &lead, rf(&names, "1/4", "1"));
    }

    #[test]
    fn recursion_at_half() {
        let j = hypergeometric_jet(&frac(1, 2), 1).unwrap();
        assert_eq!(j.coeff(&MultiIndex::new(vec![0])), Polynomial::var(0));
        assert_eq!(j.coeff(&MultiIndex::new(vec![1])), Polynomial::var(1));
        let j = hypergeometric_jet(&frac(1, 2), 2).unwrap();
        assert_eq!(
            j.coeff(&MultiIndex::new(vec![2])),
            Polynomial::var(0).scale(&frac(1, 2))
        );
        assert!(hypergeometric_jet(&int(0), 3).is_err());
        assert!(hypergeometric_jet(&int(1), 3).is_err());
    }

    #[test]
    fn hypergeometric_coefficients_solve_the_equation() {
        // at λ₀ = 0: (n+1)² a_{n+1} = (n + 1/2)² a_n
        for n in 0..20u32 {
            let lhs = int((n as i64 + 1).pow(2)) * hypergeometric_coefficient(n + 1);
            let h = frac(2 * n as i64 + 1, 2);
            assert_eq!(lhs, &h * &h * hypergeometric_coefficient(n));
        }
        assert_eq!(hypergeometric_coefficient(1), frac(1, 4));
        assert_eq!(hypergeometric_coefficient(2), frac(9, 64));
    }

    #[test]
    fn legendre_beta_matches_recursion() {
        let chart = legendre_chart();
        for l0 in [frac(1, 2), frac(1, 4), int(2)] {
            let sigma = JetPoint::linear(std::slice::from_ref(&l0), &[vec![int(1)]], 4).unwrap();
            let f: MatrixJet = beta(&chart, &sigma, &Matrix::identity(2)).unwrap();
            let [e1, e2] = legendre_frame_row(&l0, 4).unwrap();
            assert_eq!(f.entry(1, 0), &e1);
            assert_eq!(f.entry(1, 1), &e2);
        }
    }

    #[test]
    fn synthetic_charts() {
        for ex in all_examples() {
            assert!(ex.chart.is_integrable(), "{}", ex.name);
            for (_, s) in ex.basepoints() {
                ex.chart.check_point(&s).unwrap();
            }
        }
        let w2 = weight_two_chart();
        assert!(w2.gram_is_flat());
        assert!(w2.frame_satisfies_hr1());
        assert!(constant_chart().gram_is_flat());
    }
}
