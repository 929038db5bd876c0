use jetforge_core::jet_algebra::{monomial_count, series_compose, MultiIndex, TruncatedSeries};
use jetforge_core::poly::Polynomial;
use jetforge_core::rational::frac;
use proptest::prelude::*;

fn series_strategy(dims: usize, order: u32) -> impl Strategy<Value = TruncatedSeries> {
    let n = monomial_count(dims, order);
    prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(move |cs| {
        let mut s = TruncatedSeries::zero(dims, order);
        for (p, (a, b)) in MultiIndex::all(dims, order).into_iter().zip(cs) {
            s.set(p, frac(a, b));
        }
        s
    })
}

fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    (1usize..=3, 0u32..=4).prop_flat_map(|(d, r)| {
        (
            series_strategy(d, r),
            series_strategy(d, r),
            series_strategy(d, r),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        let one = TruncatedSeries::one(a.dims(), a.order());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule((a, b, _c) in triple()) {
        prop_assume!(a.order() >= 1);
        let r = a.order() - 1;
        for i in 0..a.dims() {
            let lhs = (&a * &b).derive(i).unwrap().restrict(r).unwrap();
            let rhs = (&(&a.derive(i).unwrap() * &b) + &(&a * &b.derive(i).unwrap())).restrict(r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restriction_is_a_ring_homomorphism((a, b, _c) in triple(), cut in 0u32..=4) {
        let low = cut.min(a.order());
        let ra = a.restrict(low).unwrap();
        let rb = b.restrict(low).unwrap();
        prop_assert_eq!((&a * &b).restrict(low).unwrap(), &ra * &rb);
        prop_assert_eq!((&a + &b).restrict(low).unwrap(), &ra + &rb);
        if low >= 1 {
            for i in 0..a.dims() {
                prop_assert_eq!(
                    a.derive(i).unwrap().restrict(low - 1).unwrap(),
                    ra.derive(i).unwrap().restrict(low - 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn unit_inverse((a, _b, _c) in triple(), c0 in 1i64..=5) {
        let mut u = a.clone();
        u.set(MultiIndex::zero(a.dims()), frac(c0, 2));
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(&u * &inv, TruncatedSeries::one(a.dims(), a.order()));
    }

    #[test]
    fn composition_is_evaluation_of_products((a, b, _c) in triple()) {
        // f(x, y) = x^2 y - 3 y + 1/2
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let f = &(&(&x * &x) * &y) - &(&y.scale(&frac(3, 1)) - &Polynomial::constant(frac(1, 2)));
        let direct = &(&(&a * &a) * &b) - &(&b.scale(&frac(3, 1)) - &TruncatedSeries::constant(a.dims(), a.order(), frac(1, 2)));
        prop_assert_eq!(series_compose(&f, &[a.clone(), b.clone()]).unwrap(), direct);
    }

    #[test]
    fn text_round_trip((a, _b, _c) in triple()) {
        prop_assert_eq!(TruncatedSeries::parse(&a.to_text(), a.dims(), a.order()).unwrap(), a);
    }
}

#[test]
fn monomial_counts() {
    assert_eq!(monomial_count(2, 2), 6);
    assert_eq!(monomial_count(1, 5), 6);
    assert_eq!(monomial_count(3, 3), 20);
    for d in 1..4 {
        for r in 0..5 {
            assert_eq!(MultiIndex::all(d, r).len(), monomial_count(d, r));
        }
    }
}

#[test]
fn graded_order_of_indices() {
    let names: Vec<String> = MultiIndex::all(2, 2)
        .iter()
        .map(|p| format!("{:?}", p.exps()))
        .collect();
    assert_eq!(
        names,
        ["[0, 0]", "[1, 0]", "[0, 1]", "[2, 0]", "[1, 1]", "[0, 2]"]
    );
}
