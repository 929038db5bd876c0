use jetforge_core::connection::beta;
use jetforge_core::examples::{self, all_examples, hypergeometric_coefficient, pf_solution_basis};
use jetforge_core::hodge::alpha;
use jetforge_core::jet_algebra::{JetPoint, MultiIndex, TruncatedSeries};
use jetforge_core::jet_scheme::{jet_prolong, jet_space_equations, AffineScheme, PolyMap};
use jetforge_core::json::{
    chart_from_json, chart_to_json, flag_jet_from_json, flag_jet_to_json, jet_from_json,
    jet_to_json, map_from_json, map_to_json, matrix_from_json, matrix_jet_from_json,
    matrix_jet_to_json, matrix_to_json, scheme_from_json, scheme_to_json, system_from_json,
    system_to_json,
};
use jetforge_core::linalg::Matrix;
use jetforge_core::random;
use jetforge_core::rational::{frac, int};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;

const FLOAT_TOLERANCE: f64 = 1e-10;

#[test]
fn legendre_series_match_float_hypergeometric() {
    // Taylor coefficients of F = 2F1(1/2, 1/2; 1; λ) at 1/2 summed from the series at 0
    let terms = 200;
    let a: Vec<f64> = (0..terms)
        .map(|k| hypergeometric_coefficient(k).to_f64().unwrap())
        .collect();
    let taylor = |n: i32| -> f64 {
        let mut s = 0.0;
        for k in n..terms as i32 {
            let mut binom = 1.0;
            for j in 0..n {
                binom *= (k - j) as f64 / (j + 1) as f64;
            }
            s += a[k as usize] * binom * 0.5f64.powi(k - n);
        }
        s
    };
    let (f0, f1) = (taylor(0), taylor(1));
    let (sa, sb) = pf_solution_basis(&frac(1, 2), 4).unwrap();
    for n in 0..=4u32 {
        let idx = MultiIndex::new(vec![n]);
        let predicted =
            sa.coeff(&idx).to_f64().unwrap() * f0 + sb.coeff(&idx).to_f64().unwrap() * f1;
        assert!(
            (predicted - taylor(n as i32)).abs() < FLOAT_TOLERANCE,
            "coefficient {n}"
        );
    }
}

#[test]
fn every_example_round_trips() {
    for ex in all_examples() {
        let text = chart_to_json(&ex.chart);
        let back = chart_from_json(&text).unwrap();
        assert_eq!(chart_to_json(&back), text, "{}", ex.name);
        assert!(back.is_integrable());
    }
}

#[test]
fn reference_coefficients_match_beta_at_origin() {
    let ex = examples::example_by_name("exponential").unwrap();
    let sigma = JetPoint::linear(&[int(0)], &[vec![int(1)]], 6).unwrap();
    let f = beta(&ex.chart, &sigma, &Matrix::identity(1)).unwrap();
    let reference = ex.reference_coefficients.unwrap();
    for k in 0..=6 {
        assert_eq!(f.entry(0, 0).coeff(&MultiIndex::new(vec![k])), reference(k));
    }
}

#[test]
fn scheme_system_and_map_round_trips() {
    let circle = AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"]).unwrap();
    let text = scheme_to_json(&circle);
    assert_eq!(scheme_to_json(&scheme_from_json(&text).unwrap()), text);
    let sys = jet_space_equations(&circle, 2, 2).unwrap();
    let text = system_to_json(&sys);
    assert_eq!(system_from_json(&text).unwrap(), sys);
    let g = PolyMap::parse(&["x", "y"], &["x*y", "x - 1/3*y^2"]).unwrap();
    let text = map_to_json(&g);
    assert_eq!(map_to_json(&map_from_json(&text).unwrap()), text);
    let prolonged = jet_prolong(&g, 1, 2).unwrap();
    assert_eq!(map_from_json(&map_to_json(&prolonged)).unwrap(), prolonged);
}

#[test]
fn flag_round_trip() {
    let chart = examples::legendre_chart();
    let sigma = JetPoint::new(vec![
        TruncatedSeries::parse("1/4 + t1 - 2*t2^2", 2, 3).unwrap()
    ])
    .unwrap();
    let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
    let flag = alpha(&chart, &sigma, &m).unwrap();
    let text = flag_jet_to_json(&flag);
    let back = flag_jet_from_json(&text).unwrap();
    assert_eq!(back, flag);
    assert_eq!(flag_jet_to_json(&back), text);
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(matrix_from_json("[[1, 2], [3]]").is_err());
    assert!(jet_from_json("{\"dims\": 1, \"order\": 1}").is_err());
    assert!(chart_from_json("{}").is_err());
    assert_eq!(
        matrix_from_json("[[\"1/2\", 0], [0, 1]]").unwrap()[(0, 0)],
        frac(1, 2)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jets_and_frames_round_trip(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let (n, d, r) = (rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(0..=3));
        let base = random::point(&mut rng, n);
        let jet = random::jet(&mut rng, &base, d, r);
        let text = jet_to_json(&jet);
        prop_assert_eq!(jet_from_json(&text).unwrap(), jet);

        let m = rng.gen_range(1..=3);
        let chart = random::flat_chart(&mut rng, 1, m, 2);
        let s = random::point(&mut rng, 1);
        let sigma = random::jet(&mut rng, &s, d, r);
        let init = random::invertible_matrix(&mut rng, m);
        let f = beta(&chart, &sigma, &init).unwrap();
        let text = matrix_jet_to_json(&f);
        prop_assert_eq!(matrix_jet_from_json(&text).unwrap(), f);
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&init)).unwrap(), init);

        let text = chart_to_json(&chart);
        prop_assert_eq!(chart_to_json(&chart_from_json(&text).unwrap()), text);
    }
}
