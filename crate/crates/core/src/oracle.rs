//! Brute-force ground truth over `S_n` and the signed permutations of `±[n]`.
//!
//! Permutations are generated with the iterative lexicographic successor,
//! sharded by first entry. Each shard is counted independently (possibly on
//! a worker thread) and the shard vectors are summed in shard order, so the
//! result never depends on the number of workers.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("not a permutation of [n]")]
    NotAPermutation,
    #[error("not a signed permutation of ±[n]")]
    NotASignedPermutation,
    #[error("n = {n} is outside the enumeration range 1..={limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("failed to build worker pool: {0}")]
    Pool(String),
}

/// Statistic over `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PermStat {
    /// Interior peaks.
    Pk,
    /// Left peaks, with `π(0) = 0`.
    Lpk,
    /// Descents.
    Des,
}

/// Statistic over the signed permutations of `±[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignedStat {
    /// Descents over positions `0..n-1` with `ω(0) = 0`.
    DesB,
    /// Descents over positions `0..n` with `ω(0) = ω(n+1) = 0`.
    Ades,
}

/// Identifies which statistic a [`StatDistribution`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Perm(PermStat),
    Signed(SignedStat),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PermStats {
    pub pk: usize,
    pub lpk: usize,
    pub des: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignedStats {
    pub des_b: usize,
    pub ades: usize,
}

/// Exact distribution of a statistic: `counts[k]` objects have value `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatDistribution {
    pub n: usize,
    pub stat: StatKind,
    pub counts: Vec<BigInt>,
}

impl StatDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// The generating polynomial `sum_k counts[k] x^k`.
    pub fn to_poly(&self) -> Poly {
        Poly::from_bigints(&self.counts)
    }

    /// True if no zero entry sits strictly between two nonzero entries.
    pub fn has_no_internal_zeros(&self) -> bool {
        let nz: Vec<bool> = self.counts.iter().map(|c| c.sign() != num_bigint::Sign::NoSign).collect();
        let first = nz.iter().position(|&b| b);
        let last = nz.iter().rposition(|&b| b);
        match (first, last) {
            (Some(a), Some(b)) => nz[a..=b].iter().all(|&b| b),
            _ => true,
        }
    }
}

/// Enumeration caps. These are configuration, not mathematical limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub sn_max: usize,
    pub cn_max: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            sn_max: 10,
            cn_max: 7,
        }
    }
}

/// Enumerator with caps and a worker count. `jobs == 1` runs every shard
/// on the calling thread.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub limits: OracleLimits,
    pub jobs: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(OracleLimits::default())
    }
}

/// Interior peaks, left peaks and descents of a 1-based permutation, in one
/// pass. Input is not validated.
fn stats_unchecked(pi: &[u8]) -> PermStats {
    let n = pi.len();
    let mut s = PermStats::default();
    for i in 0..n.saturating_sub(1) {
        if pi[i] > pi[i + 1] {
            s.des += 1;
            let left = if i == 0 { 0 } else { pi[i - 1] };
            if left < pi[i] {
                s.lpk += 1;
                if i > 0 {
                    s.pk += 1;
                }
            }
        }
    }
    s
}

/// Descent counts of a signed window `(ω(1), …, ω(n))`.
fn signed_stats_unchecked(values: impl Iterator<Item = i16>) -> SignedStats {
    let mut prev = 0i16;
    let mut des_b = 0;
    for v in values {
        if prev > v {
            des_b += 1;
        }
        prev = v;
    }
    let ades = des_b + usize::from(prev > 0);
    SignedStats { des_b, ades }
}

/// Statistics of `pi`, given in one-line notation on `1..=n`.
pub fn perm_stats(pi: &[usize]) -> Result<PermStats, OracleError> {
    let n = pi.len();
    if n == 0 || n > u8::MAX as usize {
        return Err(OracleError::NotAPermutation);
    }
    let mut seen = vec![false; n + 1];
    for &v in pi {
        if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
            return Err(OracleError::NotAPermutation);
        }
    }
    let bytes: Vec<u8> = pi.iter().map(|&v| v as u8).collect();
    Ok(stats_unchecked(&bytes))
}

/// Statistics of the signed permutation with window `(ω(1), …, ω(n))`.
pub fn signed_stats(omega: &[i64]) -> Result<SignedStats, OracleError> {
    let n = omega.len();
    if n == 0 || n > i16::MAX as usize {
        return Err(OracleError::NotASignedPermutation);
    }
    let mut seen = vec![false; n + 1];
    for &v in omega {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > n || std::mem::replace(&mut seen[a], true) {
            return Err(OracleError::NotASignedPermutation);
        }
    }
    Ok(signed_stats_unchecked(omega.iter().map(|&v| v as i16)))
}

/// Lexicographic successor in place; false once `a` is the last permutation.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` whose first entry is `first`,
/// in lexicographic order.
fn for_each_in_shard(n: usize, first: u8, mut f: impl FnMut(&[u8])) {
    let mut buf: Vec<u8> = std::iter::once(first)
        .chain((1..=n as u8).filter(|&v| v != first))
        .collect();
    loop {
        f(&buf);
        if !next_permutation(&mut buf[1..]) {
            break;
        }
    }
}

fn add_into(acc: &mut [u64], shard: &[u64]) {
    for (a, s) in acc.iter_mut().zip(shard) {
        *a += s;
    }
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Self {
        Oracle {
            limits,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    fn check_sn(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 || n > self.limits.sn_max {
            return Err(OracleError::LimitExceeded {
                n,
                limit: self.limits.sn_max,
            });
        }
        Ok(())
    }

    fn check_cn(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 || n > self.limits.cn_max {
            return Err(OracleError::LimitExceeded {
                n,
                limit: self.limits.cn_max,
            });
        }
        Ok(())
    }

    /// Runs one closure per first entry `1..=n` and sums the shard vectors
    /// in shard order.
    fn sharded<F>(&self, n: usize, width: usize, shard: F) -> Result<Vec<u64>, OracleError>
    where
        F: Fn(u8) -> Vec<u64> + Sync,
    {
        let firsts: Vec<u8> = (1..=n as u8).collect();
        let parts: Vec<Vec<u64>> = if self.jobs <= 1 {
            firsts.iter().map(|&f| shard(f)).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.jobs)
                .build()
                .map_err(|e| OracleError::Pool(e.to_string()))?;
            pool.install(|| firsts.par_iter().map(|&f| shard(f)).collect())
        };
        let mut acc = vec![0u64; width];
        for p in &parts {
            add_into(&mut acc, p);
        }
        Ok(acc)
    }

    /// Distribution of `stat` over `S_n` by full enumeration.
    pub fn distribution(&self, n: usize, stat: PermStat) -> Result<StatDistribution, OracleError> {
        self.check_sn(n)?;
        let width = match stat {
            PermStat::Pk => (n - 1) / 2 + 1,
            PermStat::Lpk => n / 2 + 1,
            PermStat::Des => n,
        };
        let counts = self.sharded(n, width, |first| {
            let mut local = vec![0u64; width];
            for_each_in_shard(n, first, |pi| {
                let s = stats_unchecked(pi);
                let k = match stat {
                    PermStat::Pk => s.pk,
                    PermStat::Lpk => s.lpk,
                    PermStat::Des => s.des,
                };
                local[k] += 1;
            });
            local
        })?;
        Ok(StatDistribution {
            n,
            stat: StatKind::Perm(stat),
            counts: counts.into_iter().map(BigInt::from).collect(),
        })
    }

    /// Distribution of `stat` over all `2^n n!` signed permutations.
    pub fn signed_distribution(
        &self,
        n: usize,
        stat: SignedStat,
    ) -> Result<StatDistribution, OracleError> {
        self.check_cn(n)?;
        let width = n + 1;
        let counts = self.sharded(n, width, |first| {
            let mut local = vec![0u64; width];
            for_each_in_shard(n, first, |pi| {
                for signs in 0u32..(1 << n) {
                    let window = pi.iter().enumerate().map(|(i, &v)| {
                        if signs >> i & 1 == 1 {
                            -(v as i16)
                        } else {
                            v as i16
                        }
                    });
                    let s = signed_stats_unchecked(window);
                    local[match stat {
                        SignedStat::DesB => s.des_b,
                        SignedStat::Ades => s.ades,
                    }] += 1;
                }
            });
            local
        })?;
        Ok(StatDistribution {
            n,
            stat: StatKind::Signed(stat),
            counts: counts.into_iter().map(BigInt::from).collect(),
        })
    }

    /// Number of alternating permutations `π(1) > π(2) < π(3) > …` in `S_n`.
    pub fn count_alternating(&self, n: usize) -> Result<BigInt, OracleError> {
        self.count_zigzag(n, true)
    }

    /// Number of reverse alternating permutations `π(1) < π(2) > …`.
    pub fn count_reverse_alternating(&self, n: usize) -> Result<BigInt, OracleError> {
        self.count_zigzag(n, false)
    }

    fn count_zigzag(&self, n: usize, down_first: bool) -> Result<BigInt, OracleError> {
        self.check_sn(n)?;
        let counts = self.sharded(n, 1, |first| {
            let mut c = 0u64;
            for_each_in_shard(n, first, |pi| {
                let ok = pi
                    .windows(2)
                    .enumerate()
                    .all(|(i, w)| (w[0] > w[1]) == ((i % 2 == 0) == down_first));
                c += u64::from(ok);
            });
            vec![c]
        })?;
        Ok(BigInt::from(counts[0]))
    }

    /// Checks `lpk - pk ∈ {0, 1}` and the documented ranges on every
    /// permutation of `S_n`; returns the first offender.
    pub fn find_peak_range_violation(&self, n: usize) -> Result<Option<Vec<u8>>, OracleError> {
        self.check_sn(n)?;
        let mut bad = None;
        for first in 1..=n as u8 {
            for_each_in_shard(n, first, |pi| {
                let s = stats_unchecked(pi);
                let ok = s.lpk >= s.pk
                    && s.lpk - s.pk <= 1
                    && s.pk <= (n - 1) / 2
                    && s.lpk <= n / 2
                    && s.des < n;
                if !ok && bad.is_none() {
                    bad = Some(pi.to_vec());
                }
            });
            if bad.is_some() {
                break;
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(d: &StatDistribution) -> Vec<i64> {
        d.counts.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn perm_stats_examples() {
        assert_eq!(
            perm_stats(&[2, 1, 4, 3, 5]).unwrap(),
            PermStats { pk: 1, lpk: 2, des: 2 }
        );
        assert_eq!(perm_stats(&[1, 2, 3, 4, 5]).unwrap(), PermStats::default());
        assert_eq!(
            perm_stats(&[2, 1, 4, 3]).unwrap(),
            PermStats { pk: 1, lpk: 2, des: 2 }
        );
        assert_eq!(perm_stats(&[1, 1]), Err(OracleError::NotAPermutation));
        assert_eq!(perm_stats(&[0, 1]), Err(OracleError::NotAPermutation));
        assert_eq!(perm_stats(&[]), Err(OracleError::NotAPermutation));
    }

    #[test]
    fn signed_stats_examples() {
        assert_eq!(
            signed_stats(&[-2, -4, 6, -8, 1, 3, 7, 5]).unwrap(),
            SignedStats { des_b: 4, ades: 5 }
        );
        assert_eq!(
            signed_stats(&[1, 2, 3, 4]).unwrap(),
            SignedStats { des_b: 0, ades: 1 }
        );
        assert_eq!(signed_stats(&[-1]).unwrap(), SignedStats { des_b: 1, ades: 1 });
        assert_eq!(
            signed_stats(&[1, -1]),
            Err(OracleError::NotASignedPermutation)
        );
    }

    #[test]
    fn small_distributions() {
        let o = Oracle::default().with_jobs(1);
        assert_eq!(counts(&o.distribution(3, PermStat::Pk).unwrap()), [4, 2]);
        assert_eq!(counts(&o.distribution(3, PermStat::Lpk).unwrap()), [1, 5]);
        assert_eq!(counts(&o.distribution(3, PermStat::Des).unwrap()), [1, 4, 1]);
        assert_eq!(counts(&o.distribution(1, PermStat::Pk).unwrap()), [1]);
    }

    #[test]
    fn small_signed_distributions() {
        let o = Oracle::default().with_jobs(1);
        assert_eq!(
            counts(&o.signed_distribution(1, SignedStat::Ades).unwrap()),
            [0, 2]
        );
        assert_eq!(
            counts(&o.signed_distribution(1, SignedStat::DesB).unwrap()),
            [1, 1]
        );
        assert_eq!(
            counts(&o.signed_distribution(2, SignedStat::DesB).unwrap()),
            [1, 6, 1]
        );
    }

    #[test]
    fn alternating_counts() {
        let o = Oracle::default().with_jobs(1);
        let got: Vec<BigInt> = (1..=5).map(|n| o.count_alternating(n).unwrap()).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 16].into_iter().map(BigInt::from).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn limits_enforced() {
        let o = Oracle::default();
        assert_eq!(
            o.distribution(11, PermStat::Pk),
            Err(OracleError::LimitExceeded { n: 11, limit: 10 })
        );
        assert_eq!(
            o.signed_distribution(8, SignedStat::Ades),
            Err(OracleError::LimitExceeded { n: 8, limit: 7 })
        );
        assert!(o.count_alternating(0).is_err());
    }

    #[test]
    fn internal_zero_detection() {
        let mk = |v: &[i64]| StatDistribution {
            n: 0,
            stat: StatKind::Perm(PermStat::Pk),
            counts: v.iter().map(|&c| BigInt::from(c)).collect(),
        };
        assert!(mk(&[0, 2, 3, 0]).has_no_internal_zeros());
        assert!(!mk(&[1, 0, 3]).has_no_internal_zeros());
    }
}
