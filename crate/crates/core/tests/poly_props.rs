use peakpoly::exact::{ratio, Poly, Rational};
use peakpoly::series::TruncSeries;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(6), b in poly(6), c in poly(6)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert_eq!(&a + &(-&a), Poly::zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(6), d in nonzero_poly(4)) {
        prop_assert_eq!((&p * &d).exact_div(&d).unwrap(), p);
    }

    #[test]
    fn div_rem_identity(p in poly(8), d in nonzero_poly(4)) {
        let (q, r) = p.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(6), b in poly(6), x in small_rat()) {
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn compose_matches_nested_eval(a in poly(5), b in poly(3), x in small_rat()) {
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn cleared_substitution_matches_rational_evaluation(
        p in poly(5),
        num in poly(3),
        den in nonzero_poly(3),
        extra in 0usize..3,
        x in small_rat(),
    ) {
        let clear = p.degree().unwrap_or(0) + extra;
        let d = den.eval(&x);
        prop_assume!(d != Rational::from_integer(0.into()));
        let cleared = p.subst_cleared(&num, &den, clear).unwrap();
        let want = num_traits::pow(d.clone(), clear) * p.eval(&(num.eval(&x) / d));
        prop_assert_eq!(cleared.eval(&x), want);
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly(5), b in poly(5)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitive_part_keeps_signs(p in nonzero_poly(5), x in small_rat()) {
        let q = p.primitive_part();
        prop_assert!(q.integer_coeffs().is_some());
        let (s, t) = (p.eval(&x), q.eval(&x));
        prop_assert_eq!(s.cmp(&Rational::from_integer(0.into())), t.cmp(&Rational::from_integer(0.into())));
    }

    #[test]
    fn series_multiplication_commutes_and_associates(
        a in prop::collection::vec(poly(3), 1..6),
        b in prop::collection::vec(poly(3), 1..6),
        c in prop::collection::vec(poly(3), 1..6),
    ) {
        let order = 5;
        let (a, b, c) = (
            TruncSeries::new(order, a),
            TruncSeries::new(order, b),
            TruncSeries::new(order, c),
        );
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn series_solve_inverts_multiplication(
        a in prop::collection::vec(poly(3), 1..6),
        b0 in nonzero_poly(2),
        b in prop::collection::vec(poly(3), 0..5),
    ) {
        let order = 5;
        let a = TruncSeries::new(order, a);
        let mut den = vec![b0];
        den.extend(b);
        let den = TruncSeries::new(order, den);
        let solved = TruncSeries::solve(&(&a * &den), &den).unwrap();
        prop_assert_eq!(solved, a);
    }
}
