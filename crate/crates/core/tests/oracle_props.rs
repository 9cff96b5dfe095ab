use peakpoly::oracle::{perm_stats, signed_stats, Oracle, OracleLimits, PermStat, SignedStat};
use proptest::prelude::*;

fn permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn signed_permutation(max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    permutation(max_n).prop_flat_map(|p| {
        let n = p.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |signs| {
            p.iter()
                .zip(signs)
                .map(|(&v, neg)| if neg { -(v as i64) } else { v as i64 })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn peak_statistics_stay_in_range(pi in permutation(12)) {
        let n = pi.len();
        let s = perm_stats(&pi).unwrap();
        prop_assert!(s.pk <= (n - 1) / 2);
        prop_assert!(s.lpk <= n / 2);
        prop_assert!(s.lpk == s.pk || s.lpk == s.pk + 1);
        prop_assert!(s.des < n);
    }

    #[test]
    fn signed_descents_stay_in_range(omega in signed_permutation(10)) {
        let s = signed_stats(&omega).unwrap();
        prop_assert!(s.ades == s.des_b || s.ades == s.des_b + 1);
        prop_assert!(s.ades >= 1);
        prop_assert!(s.des_b <= omega.len());
    }

    #[test]
    fn complement_swaps_ascents_and_descents(pi in permutation(10)) {
        let n = pi.len();
        let c: Vec<usize> = pi.iter().map(|&v| n + 1 - v).collect();
        let (a, b) = (perm_stats(&pi).unwrap(), perm_stats(&c).unwrap());
        prop_assert_eq!(a.des + b.des, n - 1);
    }
}

#[test]
fn sharding_is_invisible() {
    let limits = OracleLimits::default();
    for jobs in [2, 3, 8] {
        let a = Oracle::new(limits).with_jobs(1);
        let b = Oracle::new(limits).with_jobs(jobs);
        for n in 1..=8 {
            for stat in [PermStat::Pk, PermStat::Lpk, PermStat::Des] {
                assert_eq!(a.distribution(n, stat).unwrap(), b.distribution(n, stat).unwrap());
            }
        }
        for n in 1..=5 {
            for stat in [SignedStat::DesB, SignedStat::Ades] {
                assert_eq!(
                    a.signed_distribution(n, stat).unwrap(),
                    b.signed_distribution(n, stat).unwrap()
                );
            }
        }
    }
}

#[test]
fn rejects_malformed_input() {
    assert!(perm_stats(&[1, 1, 2]).is_err());
    assert!(perm_stats(&[0, 1]).is_err());
    assert!(signed_stats(&[1, -1]).is_err());
    assert!(signed_stats(&[0]).is_err());
}
