use std::collections::BTreeSet;

use peakpoly::exact::{ratio, Poly, Rational};
use peakpoly::roots::{count_roots_in, isolate_roots, multiplicity_at, RootError};
use proptest::prelude::*;

fn distinct_roots() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-30i64..=30, 1i64..=5), 1..=6).prop_map(|s| {
        s.into_iter()
            .map(|(n, d)| ratio(n, d))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    })
}

fn product(roots: &[Rational]) -> Poly {
    roots.iter().fold(Poly::one(), |acc, r| {
        &acc * &Poly::from_coeffs(vec![-r.clone(), Rational::from_integer(1.into())])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isolation_finds_every_root(roots in distinct_roots()) {
        let p = product(&roots);
        let ivs = isolate_roots(&p).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, r) in ivs.iter().zip(&roots) {
            prop_assert!(iv.contains(r));
        }
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn sturm_count_matches_isolation(
        roots in distinct_roots(),
        a in (-70i64..=70, 1i64..=7),
        b in (-70i64..=70, 1i64..=7),
    ) {
        let p = product(&roots);
        let (a, b) = (ratio(a.0, a.1), ratio(b.0, b.1));
        prop_assume!(a < b);
        match count_roots_in(&p, &a, &b) {
            Ok(count) => {
                let want = roots.iter().filter(|r| **r > a && **r <= b).count();
                prop_assert_eq!(count, want);
            }
            Err(RootError::EndpointIsRoot(e)) => prop_assert!(roots.contains(&e)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn multiplicity_of_repeated_factor(roots in distinct_roots(), m in 1usize..4) {
        let r = roots[0].clone();
        let p = &product(&roots) * &Poly::from_coeffs(vec![-r.clone(), Rational::from_integer(1.into())]).pow(m - 1);
        prop_assert_eq!(multiplicity_at(&p, &r).unwrap(), m);
        if m > 1 {
            prop_assert_eq!(isolate_roots(&p), Err(RootError::NonSquarefreeInput));
        }
    }
}
