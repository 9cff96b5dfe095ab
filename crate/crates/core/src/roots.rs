//! Real-root certification for the `R_n` family.
//!
//! Everything is exact: Sturm chains over the rationals count distinct real
//! roots in half-open intervals, and bisection with rational midpoints
//! isolates them. Root work is done on `G_n`, the part of `R_n` left after
//! dividing out the zero at `-1`; shared zeros at `-1` are handled from the
//! multiplicities alone.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rat, ratio, Poly, Rational};
use crate::families::{factorial, g_from_r, minus_one_multiplicity, r_poly, FamilyError};

/// Bisection budget for any single refinement.
pub const MAX_BISECTIONS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(Rational),
    #[error("empty interval ({lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("input is not squarefree")]
    NonSquarefreeInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("root structure violated for n = {n}: {clause}")]
    StructureViolation { n: usize, clause: String },
    #[error("interlacing violated between n = {n} and n + 1: {detail}")]
    InterlacingViolation { n: usize, detail: String },
    #[error("refinement did not separate roots within {MAX_BISECTIONS} bisections")]
    RefinementExhausted,
}

/// Open rational interval `(lo, hi)` holding exactly one root of the
/// polynomial it was built for; neither endpoint is a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo < r && r < &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Integer coefficients of a positive multiple of `p`.
fn int_coeffs(p: &Poly) -> Vec<BigInt> {
    p.primitive_part().integer_coeffs().expect("primitive part is integral")
}

/// Sign of `p(a/b)` from the integer `b^d p(a/b)`, `b > 0`.
fn int_sign(coeffs: &[BigInt], at: &Rational) -> i8 {
    let Some(lead) = coeffs.last() else {
        return 0;
    };
    let (a, b) = (at.numer(), at.denom());
    let mut acc = lead.clone();
    let mut b_pow = BigInt::one();
    for c in coeffs.iter().rev().skip(1) {
        b_pow *= b;
        acc = acc * a + c * &b_pow;
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `p, p', -rem(p, p'), …` down to the last nonzero remainder. Each entry
/// is rescaled by a positive rational to keep coefficients small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<Poly>,
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut polys = vec![p.primitive_part()];
        let d = p.derivative().primitive_part();
        if !d.is_zero() {
            polys.push(d);
        }
        while polys.len() >= 2 {
            let k = polys.len();
            let (_, r) = polys[k - 2].div_rem(&polys[k - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            polys.push((-r).primitive_part());
        }
        let ints = polys.iter().map(int_coeffs).collect();
        SturmChain { polys, ints }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// The last entry is `gcd(p, p')` up to a constant factor.
    pub fn is_squarefree(&self) -> bool {
        self.polys.last().and_then(Poly::degree) == Some(0)
    }

    pub fn sign_variations(&self, at: &Rational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.ints {
            let s = int_sign(p, at);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_variations(a) - self.sign_variations(b)
    }
}

/// Largest `m` with `(x - r)^m | p`.
pub fn multiplicity_at(p: &Poly, r: &Rational) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let factor = Poly::from_coeffs(vec![-r.clone(), Rational::one()]);
    let mut m = 0;
    let mut cur = p.clone();
    while let Ok(q) = cur.exact_div(&factor) {
        cur = q;
        m += 1;
    }
    Ok(m)
}

fn empty(lo: &Rational, hi: &Rational) -> RootError {
    RootError::EmptyInterval {
        lo: lo.to_string(),
        hi: hi.to_string(),
    }
}

/// The Sturm chain of `p`, rejecting zero and non-squarefree input.
fn squarefree_chain(p: &Poly) -> Result<SturmChain, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let chain = SturmChain::new(p);
    if !chain.is_squarefree() {
        return Err(RootError::NonSquarefreeInput);
    }
    Ok(chain)
}

fn checked_count(chain: &SturmChain, a: &Rational, b: &Rational) -> Result<usize, RootError> {
    if a >= b {
        return Err(empty(a, b));
    }
    for e in [a, b] {
        if int_sign(&chain.ints[0], e) == 0 {
            return Err(RootError::EndpointIsRoot(e.clone()));
        }
    }
    Ok(chain.count(a, b))
}

/// Distinct real roots of squarefree `p` in `(a, b]`.
pub fn count_roots_in(p: &Poly, a: &Rational, b: &Rational) -> Result<usize, RootError> {
    if a >= b {
        return Err(empty(a, b));
    }
    checked_count(&squarefree_chain(p)?, a, b)
}

/// Strict bound on the absolute value of every root.
fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`. The
/// interval holds at most one root, so two candidates suffice.
fn split_point(p: &[BigInt], lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    [ratio(1, 2), ratio(1, 3), ratio(2, 3)]
        .into_iter()
        .map(|f| lo + &w * f)
        .find(|m| int_sign(p, m) != 0)
        .expect("at most one root inside")
}

/// Isolating intervals for the real roots of squarefree `p`, ascending.
pub fn isolate_roots(p: &Poly) -> Result<Vec<Interval>, RootError> {
    let chain = squarefree_chain(p)?;
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = cauchy_bound(p);
    isolate_with(&chain, &-b.clone(), &b)
}

/// Isolating intervals for the roots of squarefree `p` in `(lo, hi)`,
/// ascending. Neither endpoint may be a root.
pub fn isolate_roots_in(p: &Poly, lo: &Rational, hi: &Rational) -> Result<Vec<Interval>, RootError> {
    if lo >= hi {
        return Err(empty(lo, hi));
    }
    isolate_with(&squarefree_chain(p)?, lo, hi)
}

fn isolate_with(chain: &SturmChain, lo: &Rational, hi: &Rational) -> Result<Vec<Interval>, RootError> {
    checked_count(chain, lo, hi)?;
    let ints = &chain.ints[0];
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), 0usize)];
    while let Some((a, b, depth)) = stack.pop() {
        match chain.count(&a, &b) {
            0 => {}
            1 => out.push(Interval { lo: a, hi: b }),
            _ if depth >= MAX_BISECTIONS => return Err(RootError::RefinementExhausted),
            _ => {
                let m = split_point(ints, &a, &b);
                stack.push((m.clone(), b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Halves (roughly) an isolating interval of `p`, keeping the root inside.
pub fn bisect(p: &Poly, iv: &Interval) -> Interval {
    bisect_int(&int_coeffs(p), iv)
}

fn bisect_int(p: &[BigInt], iv: &Interval) -> Interval {
    let m = split_point(p, &iv.lo, &iv.hi);
    if int_sign(p, &iv.lo) != int_sign(p, &m) {
        Interval { lo: iv.lo.clone(), hi: m }
    } else {
        Interval { lo: m, hi: iv.hi.clone() }
    }
}

/// Outcome of certifying the zero structure of one `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub n: usize,
    pub mult_minus1: usize,
    /// Isolating intervals of the simple zeros, ascending, each inside
    /// `(-1, 0)`.
    pub isolating_intervals: Vec<Interval>,
    pub all_in_range: bool,
    pub g: Poly,
}

fn violation(n: usize, clause: impl Into<String>) -> RootError {
    RootError::StructureViolation {
        n,
        clause: clause.into(),
    }
}

/// Certifies that `R_n` has the zero `-1` with multiplicity `⌊n/2⌋+1`, and
/// `⌈n/2⌉-1` further simple real zeros, all inside `(-1, 0)`.
pub fn verify_root_structure(n: usize) -> Result<RootReport, RootError> {
    if n == 0 {
        return Err(violation(0, "n must be at least 1"));
    }
    verify_structure(n, &r_poly(n))
}

/// Same as [`verify_root_structure`] for a caller-supplied `R_n`.
pub fn verify_structure(n: usize, r: &Poly) -> Result<RootReport, RootError> {
    let minus_one = rat(-1);
    let m = multiplicity_at(r, &minus_one)?;
    let want_m = minus_one_multiplicity(n);
    if m != want_m {
        return Err(violation(n, format!("multiplicity at -1 is {m}, expected {want_m}")));
    }
    let g = g_from_r(n, r).map_err(|e| match e {
        FamilyError::NonpositiveCoefficient { index } => {
            violation(n, format!("G_n coefficient {index} is not a positive integer"))
        }
        other => violation(n, other.to_string()),
    })?;
    let chain = SturmChain::new(&g);
    if !chain.is_squarefree() {
        return Err(violation(n, "G_n is not squarefree"));
    }
    let k = g.degree().expect("nonzero");
    let want_k = n.div_ceil(2) - 1;
    if k != want_k {
        return Err(violation(n, format!("deg G_n is {k}, expected {want_k}")));
    }
    let bound = cauchy_bound(&g);
    let all_real = chain.count(&-bound.clone(), &bound);
    if all_real != k {
        return Err(violation(n, format!("G_n has {all_real} real roots, degree {k}")));
    }
    let intervals = if k == 0 {
        Vec::new()
    } else {
        isolate_with(&chain, &minus_one, &Rational::zero())?
    };
    if intervals.len() != k {
        return Err(violation(
            n,
            format!("{} of {k} roots lie in (-1, 0)", intervals.len()),
        ));
    }
    if m + k != r.degree().unwrap_or(0) {
        return Err(violation(n, "root count with multiplicity differs from degree"));
    }
    Ok(RootReport {
        n,
        mult_minus1: m,
        isolating_intervals: intervals,
        all_in_range: true,
        g,
    })
}

#[derive(Debug, Clone)]
enum RootPos<'a> {
    Exact(Rational),
    Isolated { p: &'a [BigInt], iv: Interval },
}

/// Sturm chain of `gcd(p, q)` when it is not constant.
fn common_chain(p: &Poly, q: &Poly) -> Option<SturmChain> {
    let g = p.gcd(q);
    g.degree().is_some_and(|d| d > 0).then(|| SturmChain::new(&g))
}

/// Orders an isolated root of `p` against one of `q`, refining both until
/// their intervals separate or a common root is found in the overlap.
fn compare_isolated(
    pi: &[BigInt],
    a: &Interval,
    qi: &[BigInt],
    b: &Interval,
    common: Option<&SturmChain>,
) -> Result<Ordering, RootError> {
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..=MAX_BISECTIONS {
        if a.hi <= b.lo {
            return Ok(Ordering::Less);
        }
        if b.hi <= a.lo {
            return Ok(Ordering::Greater);
        }
        if let Some(chain) = common {
            let lo = (&a.lo).max(&b.lo);
            let hi = (&a.hi).min(&b.hi);
            if lo < hi && chain.count(lo, hi) > 0 {
                return Ok(Ordering::Equal);
            }
        }
        a = bisect_int(pi, &a);
        b = bisect_int(qi, &b);
    }
    Err(RootError::RefinementExhausted)
}

fn compare_to_exact(pi: &[BigInt], iv: &Interval, e: &Rational) -> Result<Ordering, RootError> {
    if int_sign(pi, e) == 0 && iv.contains(e) {
        return Ok(Ordering::Equal);
    }
    let mut iv = iv.clone();
    for _ in 0..=MAX_BISECTIONS {
        if &iv.lo >= e {
            return Ok(Ordering::Greater);
        }
        if &iv.hi <= e {
            return Ok(Ordering::Less);
        }
        iv = bisect_int(pi, &iv);
    }
    Err(RootError::RefinementExhausted)
}

fn compare(x: &RootPos<'_>, y: &RootPos<'_>, common: Option<&SturmChain>) -> Result<Ordering, RootError> {
    match (x, y) {
        (RootPos::Exact(a), RootPos::Exact(b)) => Ok(a.cmp(b)),
        (RootPos::Isolated { p, iv }, RootPos::Exact(e)) => compare_to_exact(p, iv, e),
        (RootPos::Exact(e), RootPos::Isolated { p, iv }) => compare_to_exact(p, iv, e).map(Ordering::reverse),
        (RootPos::Isolated { p, iv: a }, RootPos::Isolated { p: q, iv: b }) => {
            compare_isolated(p, a, q, b, common)
        }
    }
}

/// Zeros of `R_n` in nonincreasing order.
fn zeros_desc<'a>(report: &RootReport, g: &'a [BigInt]) -> Vec<RootPos<'a>> {
    let mut z: Vec<RootPos<'a>> = report
        .isolating_intervals
        .iter()
        .rev()
        .map(|iv| RootPos::Isolated { p: g, iv: iv.clone() })
        .collect();
    z.extend(std::iter::repeat_n(RootPos::Exact(rat(-1)), report.mult_minus1));
    z
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingReport {
    pub n: usize,
    /// Number of pairwise order relations certified.
    pub relations: usize,
    /// Relations that held with equality.
    pub coincident: usize,
}

/// Certifies that `R_n` separates `R_{n+1}`: with zeros `r_1 ≥ r_2 ≥ …` of
/// `R_n` and `s_1 ≥ s_2 ≥ …` of `R_{n+1}`, `s_1 ≥ r_1 ≥ s_2 ≥ r_2 ≥ …`.
pub fn verify_interlacing(n: usize) -> Result<InterlacingReport, RootError> {
    let small = verify_root_structure(n)?;
    let large = verify_root_structure(n + 1)?;
    interlacing_between(n, &small, &large)
}

pub fn interlacing_between(
    n: usize,
    small: &RootReport,
    large: &RootReport,
) -> Result<InterlacingReport, RootError> {
    let (small_g, large_g) = (int_coeffs(&small.g), int_coeffs(&large.g));
    let common = common_chain(&small.g, &large.g);
    let r = zeros_desc(small, &small_g);
    let s = zeros_desc(large, &large_g);
    if !(r.len() <= s.len() && s.len() <= r.len() + 1) {
        return Err(RootError::InterlacingViolation {
            n,
            detail: format!("degrees {} and {}", r.len(), s.len()),
        });
    }
    let mut relations = 0;
    let mut coincident = 0;
    let mut require_ge = |hi: &RootPos<'_>, lo: &RootPos<'_>, what: String| -> Result<(), RootError> {
        match compare(hi, lo, common.as_ref())? {
            Ordering::Less => Err(RootError::InterlacingViolation { n, detail: what }),
            ord => {
                relations += 1;
                coincident += usize::from(ord == Ordering::Equal);
                Ok(())
            }
        }
    };
    for i in 0..r.len() {
        require_ge(&s[i], &r[i], format!("s_{} < r_{}", i + 1, i + 1))?;
        if let Some(next) = s.get(i + 1) {
            require_ge(&r[i], next, format!("r_{} < s_{}", i + 1, i + 2))?;
        }
    }
    Ok(InterlacingReport {
        n,
        relations,
        coincident,
    })
}

/// Mean and variance of the coefficient distribution of `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CltStats {
    pub n: usize,
    pub mu: Rational,
    pub sigma2: Rational,
    /// `R_n(1)`, `R_n'(1)`, `R_n''(1)`.
    pub at_one: [Rational; 3],
}

pub fn clt_stats(n: usize) -> CltStats {
    clt_stats_of(n, &r_poly(n))
}

pub fn clt_stats_of(n: usize, r: &Poly) -> CltStats {
    let one = Rational::one();
    let d1 = r.derivative();
    let v0 = r.eval(&one);
    let v1 = d1.eval(&one);
    let v2 = d1.derivative().eval(&one);
    let mu = &v1 / &v0;
    let sigma2 = &mu + &v2 / &v0 - &mu * &mu;
    CltStats {
        n,
        mu,
        sigma2,
        at_one: [v0, v1, v2],
    }
}

/// A closed form that failed, with computed and expected values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormMismatch {
    pub quantity: &'static str,
    pub got: Rational,
    pub want: Rational,
}

/// The closed forms `R_n(1) = 2 n!`, `R_n'(1) = (4n-2) n!/3` (`n ≥ 2`),
/// `R_n''(1) = n! (40n^2 - 84n + 56)/45`, `μ = (2n-1)/3` and
/// `σ^2 = (8n+8)/45` (`n ≥ 4`), checked in that order.
pub fn clt_closed_forms(stats: &CltStats) -> Result<(), Box<ClosedFormMismatch>> {
    let n = stats.n as i64;
    let f = Rational::from_integer(factorial(stats.n));
    let mut expected: Vec<(&'static str, &Rational, Rational)> =
        vec![("R_n(1)", &stats.at_one[0], &f * rat(2))];
    if n >= 2 {
        expected.push(("R_n'(1)", &stats.at_one[1], &f * ratio(4 * n - 2, 3)));
    }
    if n >= 4 {
        expected.push((
            "R_n''(1)",
            &stats.at_one[2],
            &f * ratio(40 * n * n - 84 * n + 56, 45),
        ));
        expected.push(("mu", &stats.mu, ratio(2 * n - 1, 3)));
        expected.push(("sigma2", &stats.sigma2, ratio(8 * n + 8, 45)));
    }
    for (quantity, got, want) in expected {
        if *got != want {
            return Err(Box::new(ClosedFormMismatch {
                quantity,
                got: got.clone(),
                want,
            }));
        }
    }
    Ok(())
}

/// Location of the largest coefficient of `R_n` against `(2n-1)/3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeReport {
    pub n: usize,
    /// Every index attaining the maximum, ascending.
    pub argmax: Vec<usize>,
    pub max: BigInt,
    pub target: Rational,
    pub in_bracket: bool,
}

impl ModeReport {
    pub fn tie(&self) -> bool {
        self.argmax.len() > 1
    }
}

/// Checks that each maximizing index `i` equals `(2n-1)/3` when that is an
/// integer and lies in `{⌊(2n-1)/3⌋, ⌈(2n-1)/3⌉}` otherwise.
pub fn mode_check(n: usize) -> ModeReport {
    mode_check_row(n, &r_poly(n))
}

pub fn mode_check_row(n: usize, r: &Poly) -> ModeReport {
    let coeffs = r.integer_coeffs().unwrap_or_default();
    let max = coeffs.iter().max().cloned().unwrap_or_default();
    let argmax: Vec<usize> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == max)
        .map(|(i, _)| i)
        .collect();
    let target = ratio(2 * n as i64 - 1, 3);
    let (floor, ceil) = (target.floor().to_integer(), target.ceil().to_integer());
    let in_bracket = !argmax.is_empty()
        && argmax.iter().all(|&i| {
            let i = BigInt::from(i);
            i == floor || i == ceil
        });
    ModeReport {
        n,
        argmax,
        max,
        target,
        in_bracket,
    }
}

/// Helper for tests and reports: `(2n-1)` divisible by 3.
pub fn target_is_integer(n: usize) -> bool {
    (2 * n as i64 - 1).is_multiple_of(&3)
}
