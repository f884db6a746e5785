use num_rational::Ratio;
use padic_lfun::padic::{
    newton_polygon, slope_le_factor, ContextSpec, PAdicContext, PAdicElement, PAdicPolynomial,
};
use proptest::prelude::*;

fn q5() -> padic_lfun::Ctx {
    PAdicContext::qp(5, 12).unwrap()
}

fn sqrt5() -> padic_lfun::Ctx {
    PAdicContext::new(ContextSpec {
        id: "Q5(sqrt5)".into(),
        p: 5,
        unram: vec![0, 1],
        eisenstein: vec![-5, 0, 1],
        precision: 12,
    })
    .unwrap()
}

#[test]
fn linear_polygon() {
    let c = q5();
    let q = PAdicPolynomial::from_i64s(&c, &[-5, 1]).unwrap();
    assert_eq!(newton_polygon(&q).unwrap(), vec![(Ratio::from_integer(1), 1)]);
}

#[test]
fn reversed_linear_has_slope_h() {
    let c = q5();
    // 1 - 25 X: the reverse X - 25 has a root of valuation 2
    let q = PAdicPolynomial::from_i64s(&c, &[1, -25]).unwrap();
    assert_eq!(newton_polygon(&q.reverse().unwrap()).unwrap(), vec![(Ratio::from_integer(2), 1)]);
}

#[test]
fn half_slope_matches_brute_force_roots() {
    let c = q5();
    let q = PAdicPolynomial::from_i64s(&c, &[5, 5, 1]).unwrap();
    assert_eq!(newton_polygon(&q).unwrap(), vec![(Ratio::new(1, 2), 2)]);

    // brute force: search a + b·ϖ (digits mod 5) in Q5(sqrt5) for approximate
    // roots of the same polynomial; record the valuation of each hit
    let l = sqrt5();
    let ql = PAdicPolynomial::from_i64s(&l, &[5, 5, 1]).unwrap();
    let pi = PAdicElement::uniformizer(&l);
    let mut vals = Vec::new();
    for a in 0..25i64 {
        for b in 0..25i64 {
            let x = PAdicElement::from_i64(&l, a).add(&pi.mul(&PAdicElement::from_i64(&l, b)).unwrap()).unwrap();
            let fx = ql.eval(&x).unwrap();
            if fx.valuation().map_or(true, |v| v >= 5) {
                vals.push(x.vp().unwrap());
            }
        }
    }
    assert!(!vals.is_empty());
    assert!(vals.iter().all(|v| *v == Ratio::new(1, 2)));
}

#[test]
fn factor_example_degree_two() {
    let c = q5();
    let q = PAdicPolynomial::from_i64s(&c, &[1, -6, 5]).unwrap(); // (1 - X)(1 - 5X)
    let (le, gt) = slope_le_factor(&q, Ratio::from_integer(0)).unwrap();
    assert!(le.eq_at_prec(&PAdicPolynomial::from_i64s(&c, &[1, -1]).unwrap()));
    assert!(gt.eq_at_prec(&PAdicPolynomial::from_i64s(&c, &[1, -5]).unwrap()));
}

#[test]
fn factor_extremes() {
    let c = q5();
    let q = PAdicPolynomial::from_i64s(&c, &[1, 5, 25]).unwrap();
    let (le, gt) = slope_le_factor(&q, Ratio::new(1, 3)).unwrap();
    assert_eq!(le.degree(), 0);
    assert!(gt.eq_at_prec(&q));
    let (le, gt) = slope_le_factor(&q, Ratio::from_integer(5)).unwrap();
    assert_eq!(gt.degree(), 0);
    assert!(le.mul(&gt).unwrap().eq_at_prec(&q));
}

#[test]
fn slope_equal_to_h_goes_low() {
    let c = q5();
    let q = PAdicPolynomial::from_i64s(&c, &[1, -6, 5]).unwrap();
    let (le, _) = slope_le_factor(&q, Ratio::from_integer(1)).unwrap();
    assert_eq!(le.degree(), 2);
}

fn unit_strategy(p: i64) -> impl Strategy<Value = i64> {
    (1..1000i64).prop_filter("unit", move |u| u % p != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_equals_known_root_valuations(
        p in prop::sample::select(vec![2i64, 3, 5, 7]),
        spec in prop::collection::vec((0u32..3, 1..1000i64), 1..=6),
    ) {
        let c = PAdicContext::qp(p as u64, 18).unwrap();
        let roots: Vec<PAdicElement> = spec
            .iter()
            .map(|&(a, u)| {
                let u = if u % p == 0 { u + 1 } else { u };
                PAdicElement::from_i64(&c, p.pow(a) * u)
            })
            .collect();
        let q = PAdicPolynomial::from_roots(&c, &roots).unwrap();
        let mut want: Vec<Ratio<i64>> = spec.iter().map(|&(a, _)| Ratio::from_integer(a as i64)).collect();
        want.sort();
        let mut got: Vec<Ratio<i64>> = newton_polygon(&q)
            .unwrap()
            .into_iter()
            .flat_map(|(s, m)| std::iter::repeat(s).take(m))
            .collect();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn ramified_roots_have_fractional_valuations(b in unit_strategy(5), extra in 0u32..2) {
        // roots of the form ϖ·b and 5^extra in Q5(sqrt5)
        let l = sqrt5();
        let pi = PAdicElement::uniformizer(&l);
        let r1 = pi.mul(&PAdicElement::from_i64(&l, b)).unwrap();
        let r2 = PAdicElement::from_i64(&l, 5i64.pow(extra));
        let q = PAdicPolynomial::from_roots(&l, &[r1, r2]).unwrap();
        let mut got: Vec<_> = newton_polygon(&q).unwrap().into_iter()
            .flat_map(|(s, m)| std::iter::repeat(s).take(m)).collect();
        got.sort();
        let mut want = vec![Ratio::new(1, 2), Ratio::from_integer(extra as i64)];
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn slope_factor_partitions_and_recombines(
        p in prop::sample::select(vec![3i64, 5, 7]),
        spec in prop::collection::vec((0u32..3, 1..1000i64), 1..=5),
        h in 0i64..3,
    ) {
        let c = PAdicContext::qp(p as u64, 18).unwrap();
        // Q = ∏ (1 - β X), so Q* has roots β
        let mut q = PAdicPolynomial::from_i64s(&c, &[1]).unwrap();
        for &(a, u) in &spec {
            let u = if u % p == 0 { u + 1 } else { u };
            let lin = PAdicPolynomial::from_i64s(&c, &[1, -(p.pow(a) * u)]).unwrap();
            q = q.mul(&lin).unwrap();
        }
        let h = Ratio::from_integer(h);
        let (le, gt) = slope_le_factor(&q, h).unwrap();
        prop_assert!(le.mul(&gt).unwrap().eq_at_prec(&q));
        prop_assert!(le.coeffs()[0].eq_at_prec(&PAdicElement::one(&c)));
        prop_assert!(gt.coeffs()[0].is_unit());
        let n_le = spec.iter().filter(|(a, _)| Ratio::from_integer(*a as i64) <= h).count();
        prop_assert_eq!(le.degree(), n_le);
        if le.degree() > 0 {
            for (s, _) in newton_polygon(&le.reverse().unwrap()).unwrap() {
                prop_assert!(s <= h);
            }
        }
        if gt.degree() > 0 {
            for (s, _) in newton_polygon(&gt.reverse().unwrap()).unwrap() {
                prop_assert!(s > h);
            }
        }
    }

    #[test]
    fn multiply_back(a in -100000i64..100000, b in 1i64..100000) {
        let c = q5();
        let x = PAdicElement::from_i64(&c, a);
        let y = PAdicElement::from_i64(&c, b);
        prop_assert!(x.div(&y).unwrap().mul(&y).unwrap().eq_at_prec(&x));
        prop_assert!(x.add(&y).unwrap().sub(&y).unwrap().eq_at_prec(&x));
        prop_assert!(x.mul(&y).unwrap().div(&y).unwrap().eq_at_prec(&x));
    }

    #[test]
    fn unit_inverse_in_extension(a in 1i64..50, b in 0i64..50) {
        let l = PAdicContext::cyclotomic(3, 2, 10).unwrap();
        let pi = PAdicElement::uniformizer(&l);
        let x = PAdicElement::from_i64(&l, 3 * a + 1).add(&pi.mul(&PAdicElement::from_i64(&l, b)).unwrap()).unwrap();
        prop_assert!(x.mul(&x.inv().unwrap()).unwrap().eq_at_prec(&PAdicElement::one(&l)));
    }
}
