//! Every cross-family identity as a named check with a machine-readable
//! verdict.
//!
//! A check runs over an inclusive range of `n` and stops at the first
//! disagreement, so a failure witness is minimal in `n` and then in the
//! coefficient index. Checks are independent; [`Suite::run`] executes them
//! in parallel and returns them in a fixed order.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{rat, Poly, Rational};
use crate::families::{
    bell_formula_r, cvijovic_reconstruct, derivative_polys, euler_numbers, eulerian_polys, factorial,
    r_polys, r_triangle, signed_eulerian, w_polys_by_recurrence, w_triangles, x0_reduction_check,
    x1_reduction_check, CoeffTriangle,
};
use crate::oracle::{Oracle, OracleLimits, PermStat, SignedStat};
use crate::roots::{
    clt_closed_forms, clt_stats_of, interlacing_between, mode_check_row, verify_structure, RootReport,
};
use crate::series::{
    numeric_gf_spotcheck, signed_eulerian_from_gf, verify_gf, verify_pde, verify_t_from_a, GfFamily,
    GfVerdict, SeriesMismatch, MAX_GF_ORDER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Where the two sides first disagree. `index` is a coefficient index when
/// the sides are polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn values(n: usize, index: usize, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            n,
            index: Some(index),
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            detail: None,
        }
    }

    pub fn detail(n: usize, detail: impl Into<String>) -> Self {
        Witness {
            n,
            index: None,
            lhs: None,
            rhs: None,
            detail: Some(detail.into()),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    /// Inclusive `[lo, hi]`.
    pub n_range: [usize; 2],
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn from_witness(check_id: &str, lo: usize, hi: usize, witness: Option<Witness>) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            n_range: [lo, hi],
            verdict: if witness.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            witness,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// First coefficient where `lhs` and `rhs` differ.
pub fn poly_witness(n: usize, lhs: &Poly, rhs: &Poly) -> Option<Witness> {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..len)
        .find(|&k| lhs.coeff(k) != rhs.coeff(k))
        .map(|k| Witness::values(n, k, lhs.coeff(k), rhs.coeff(k)))
}

fn scalar_witness<T: PartialEq + ToString>(n: usize, index: usize, lhs: T, rhs: T, what: &str) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::values(n, index, lhs, rhs).with_detail(what))
}

fn mismatch_witness(m: &SeriesMismatch) -> Witness {
    poly_witness(m.power, &m.lhs, &m.rhs).unwrap_or_else(|| Witness::detail(m.power, "series differ"))
}

/// Runs `f` for `n = lo..=hi` and keeps the first witness.
fn range_check<F>(check_id: &str, lo: usize, hi: usize, f: F) -> CheckResult
where
    F: Fn(usize) -> Result<Option<Witness>, String>,
{
    let witness = (lo..=hi).find_map(|n| match f(n) {
        Ok(w) => w,
        Err(e) => Some(Witness::detail(n, e)),
    });
    CheckResult::from_witness(check_id, lo, hi, witness)
}

/// `R_{n,k}` from `W_{n,(k-1)/2}` (odd `k`) and `W^l_{n,k/2}` (even `k`).
pub fn interleave(w: &[BigInt], wl: &[BigInt]) -> Vec<BigInt> {
    (0..w.len() + wl.len())
        .map(|k| if k % 2 == 0 { wl[k / 2].clone() } else { w[k / 2].clone() })
        .collect()
}

/// `sum_k row[k] (4x)^k (1+x)^(e-2k)`: a peak polynomial at `4x/(1+x)^2`
/// times `(1+x)^e`, expanded term by term.
pub fn cleared_sum(row: &[BigInt], e: usize) -> Poly {
    let one_plus_x = Poly::linear(1, 1);
    let four_x = Poly::from_ints(&[0, 4]);
    row.iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, c)| {
            let term = &four_x.pow(k) * &one_plus_x.pow(e - 2 * k);
            &acc + &term.scale(&Rational::from_integer(c.clone()))
        })
}

fn two_pow(n: usize) -> BigInt {
    BigInt::one() << n
}

/// Limits and orders for a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub nmax_exact: usize,
    pub nmax_oracle: usize,
    pub cn: usize,
    pub gf_order: usize,
    pub roots_nmax: usize,
    pub clt_nmax: usize,
    pub sn_cap: usize,
    pub cn_cap: usize,
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            nmax_exact: 12,
            nmax_oracle: 9,
            cn: 7,
            gf_order: 16,
            roots_nmax: 25,
            clt_nmax: 30,
            sn_cap: OracleLimits::default().sn_max,
            cn_cap: OracleLimits::default().cn_max,
            jobs: 1,
        }
    }
}

/// Why a configuration cannot run.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{what} = {n} exceeds the limit {limit}")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },
}

impl SuiteConfig {
    pub fn validate(&self, suite: SuiteKind) -> Result<(), ConfigError> {
        use SuiteKind::*;
        let uses = |s: SuiteKind| suite == All || suite == s;
        let invalid = |m: &str| Err(ConfigError::InvalidRange(m.to_string()));
        if uses(Identities) && self.nmax_exact == 0 {
            return invalid("nmax_exact must be at least 1");
        }
        if (uses(Oracle) || uses(Identities)) && (self.nmax_oracle == 0 || self.cn == 0) {
            return invalid("oracle ranges must start at 1");
        }
        if uses(Gf) && (self.gf_order < 2) {
            return invalid("gf order must be at least 2");
        }
        if uses(Roots) && self.roots_nmax == 0 {
            return invalid("roots nmax must be at least 1");
        }
        if uses(Clt) && self.clt_nmax < 4 {
            return invalid("clt nmax must be at least 4");
        }
        if (uses(Oracle) || uses(Identities)) && self.nmax_oracle > self.sn_cap {
            return Err(ConfigError::LimitExceeded {
                what: "nmax_oracle",
                n: self.nmax_oracle,
                limit: self.sn_cap,
            });
        }
        if (uses(Oracle) || uses(Identities) || uses(Gf)) && self.cn > self.cn_cap {
            return Err(ConfigError::LimitExceeded {
                what: "cn",
                n: self.cn,
                limit: self.cn_cap,
            });
        }
        if uses(Gf) && self.gf_order > MAX_GF_ORDER {
            return Err(ConfigError::LimitExceeded {
                what: "gf_order",
                n: self.gf_order,
                limit: MAX_GF_ORDER,
            });
        }
        Ok(())
    }

    fn oracle(&self) -> Oracle {
        Oracle::new(OracleLimits {
            sn_max: self.sn_cap,
            cn_max: self.cn,
        })
        .with_jobs(self.jobs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteKind {
    All,
    Identities,
    Gf,
    Roots,
    Clt,
    Oracle,
}

impl SuiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::All => "all",
            SuiteKind::Identities => "identities",
            SuiteKind::Gf => "gf",
            SuiteKind::Roots => "roots",
            SuiteKind::Clt => "clt",
            SuiteKind::Oracle => "oracle",
        }
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync + 'a>;

/// A configured run. The R triangle is held by value so tests can corrupt
/// it and watch the checks that consume it fail.
#[derive(Debug, Clone)]
pub struct Suite {
    pub config: SuiteConfig,
    r_tri: CoeffTriangle,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Self {
        let rows = config.nmax_exact.max(config.nmax_oracle);
        Suite {
            config,
            r_tri: r_triangle(rows),
        }
    }

    /// Test hook: add `delta` to `R_{n,k}` in the triangle the checks read.
    #[doc(hidden)]
    pub fn corrupt_r_triangle(&mut self, n: usize, k: usize, delta: i64) {
        self.r_tri.perturb(n, k, delta);
    }

    /// Runs every check of `kind` and returns the results in a fixed order.
    pub fn run(&self, kind: SuiteKind) -> Result<Vec<CheckResult>, ConfigError> {
        self.config.validate(kind)?;
        let mut tasks: Vec<Task<'_>> = Vec::new();
        let uses = |s: SuiteKind| kind == SuiteKind::All || kind == s;
        if uses(SuiteKind::Identities) {
            self.identity_tasks(&mut tasks);
        }
        if uses(SuiteKind::Oracle) {
            self.oracle_tasks(&mut tasks);
        }
        if uses(SuiteKind::Gf) {
            self.gf_tasks(&mut tasks);
        }
        if uses(SuiteKind::Roots) {
            tasks.push(Box::new(|| self.roots_checks()));
        }
        if uses(SuiteKind::Clt) {
            tasks.push(Box::new(|| self.clt_checks()));
        }
        let run = || -> Vec<CheckResult> { tasks.par_iter().flat_map_iter(|t| t()).collect() };
        if self.config.jobs <= 1 {
            return Ok(tasks.iter().flat_map(|t| t()).collect());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.config.jobs)
            .build()
            .map_err(|e| ConfigError::InvalidRange(e.to_string()))?;
        Ok(pool.install(run))
    }

    fn identity_tasks<'a>(&'a self, tasks: &mut Vec<Task<'a>>) {
        tasks.push(Box::new(|| vec![self.check_r_poly()]));
        tasks.push(Box::new(|| vec![self.check_trirelation()]));
        tasks.push(Box::new(|| vec![self.check_w_recurrence()]));
        tasks.push(Box::new(|| vec![self.check_peak_expansion()]));
        tasks.push(Box::new(|| vec![self.check_stembridge()]));
        tasks.push(Box::new(|| vec![self.check_petersen()]));
        tasks.push(Box::new(|| vec![self.check_dilks_oracle()]));
        tasks.push(Box::new(|| vec![self.check_dilks_gf()]));
        tasks.push(Box::new(|| vec![self.check_bell_and_reductions()]));
        tasks.push(Box::new(|| vec![self.check_cvijovic()]));
        tasks.push(Box::new(|| vec![self.check_euler_values()]));
    }

    fn oracle_tasks<'a>(&'a self, tasks: &mut Vec<Task<'a>>) {
        tasks.push(Box::new(|| vec![self.check_oracle_peaks()]));
        tasks.push(Box::new(|| vec![self.check_oracle_interleave()]));
        tasks.push(Box::new(|| vec![self.check_oracle_eulerian()]));
        tasks.push(Box::new(|| vec![self.check_oracle_row_sums()]));
        tasks.push(Box::new(|| vec![self.check_oracle_peak_ranges()]));
        tasks.push(Box::new(|| vec![self.check_oracle_complementation()]));
        tasks.push(Box::new(|| vec![self.check_oracle_sharding()]));
    }

    fn gf_tasks<'a>(&'a self, tasks: &mut Vec<Task<'a>>) {
        for family in GfFamily::ALL {
            tasks.push(Box::new(move || {
                vec![self.gf_result(verify_gf(family, self.config.gf_order, &self.config.oracle()))]
            }));
        }
        tasks.push(Box::new(|| {
            vec![self.gf_result(verify_t_from_a(self.config.gf_order, &self.config.oracle()))]
        }));
        tasks.push(Box::new(|| vec![self.gf_result(verify_pde(self.config.gf_order))]));
        tasks.push(Box::new(|| self.numeric_checks()));
    }

    fn gf_result(&self, v: Result<GfVerdict, crate::series::SeriesError>) -> CheckResult {
        let order = self.config.gf_order;
        match v {
            Ok(v) => {
                let hi = if v.check == "gf.pde" { order - 1 } else { order };
                CheckResult::from_witness(&v.check, 0, hi, v.mismatch.as_ref().map(mismatch_witness))
            }
            Err(e) => CheckResult::from_witness("gf", 0, order, Some(Witness::detail(0, e.to_string()))),
        }
    }

    fn numeric_checks(&self) -> Vec<CheckResult> {
        let points = [(rat(1) / rat(2), rat(1) / rat(20), 20), (rat(7) / rat(10), rat(1) / rat(10), 24)];
        points
            .iter()
            .enumerate()
            .map(|(i, (x0, t0, order))| {
                let id = format!("gf.numeric.{}", i + 1);
                match numeric_gf_spotcheck(x0, t0, *order, 1e-12) {
                    Ok(r) => CheckResult::from_witness(&id, 0, *order, None).with_note(format!(
                        "x0={x0}, t0={t0}, rel_diff={:.3e}, remainder_bound={:.3e}",
                        r.rel_diff, r.remainder_bound
                    )),
                    Err(e) => {
                        CheckResult::from_witness(&id, 0, *order, Some(Witness::detail(*order, e.to_string())))
                    }
                }
            })
            .collect()
    }

    fn w_rows(&self, nmax: usize) -> (CoeffTriangle, CoeffTriangle) {
        w_triangles(nmax.max(1))
    }

    /// The triangle rows agree with `R_n` from the polynomial recurrence.
    pub fn check_r_poly(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let r = r_polys(nmax);
        range_check("triangle.r_poly", 0, nmax, |n| {
            let row = self.r_tri.row_poly(n).ok_or("missing row")?;
            Ok(poly_witness(n, &row, &r[n]))
        })
    }

    /// `R_{n,k}` interleaves `W_n` and `W^l_n`, plus the row facts
    /// `R_{n,0} = 1`, `R_{n,1} = 2^(n-1)`, `sum_k R_{n,k} = 2 n!` and
    /// `R_{n,n} = R_{n-1,n-2} = E_n`.
    pub fn check_trirelation(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (w, wl) = self.w_rows(nmax);
        let e = euler_numbers(nmax);
        range_check("triangle.trirelation", 1, nmax, |n| {
            let row = self.r_tri.row(n).ok_or("missing row")?;
            let inter = interleave(w.row(n).ok_or("missing W row")?, wl.row(n).ok_or("missing WL row")?);
            if let Some(w) = poly_witness(n, &Poly::from_bigints(row), &Poly::from_bigints(&inter)) {
                return Ok(Some(w.with_detail("R_n vs interleaved W_n, W^l_n")));
            }
            let sum: BigInt = row.iter().sum();
            let mut facts = vec![
                scalar_witness(n, 0, row[0].clone(), BigInt::one(), "R_{n,0} = 1"),
                scalar_witness(n, 1, row[1].clone(), two_pow(n - 1), "R_{n,1} = 2^(n-1)"),
                scalar_witness(n, 0, sum, factorial(n) * 2, "sum_k R_{n,k} = 2 n!"),
            ];
            if n >= 2 {
                let prev = self.r_tri.row(n - 1).ok_or("missing row")?;
                facts.push(scalar_witness(n, n, row[n].clone(), e[n].clone(), "R_{n,n} = E_n"));
                facts.push(scalar_witness(n - 1, n - 2, prev[n - 2].clone(), e[n].clone(), "R_{n-1,n-2} = E_n"));
            }
            Ok(facts.into_iter().flatten().next())
        })
    }

    /// The peak triangles agree with the polynomial recurrences for `W_n`,
    /// `W^l_n`.
    pub fn check_w_recurrence(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (w, wl) = self.w_rows(nmax);
        let (wp, wlp) = w_polys_by_recurrence(nmax);
        range_check("triangle.w_recurrence", 1, nmax, |n| {
            let a = poly_witness(n, &w.row_poly(n).ok_or("missing row")?, &wp[n]).map(|w| w.with_detail("W"));
            let b = poly_witness(n, &wl.row_poly(n).ok_or("missing row")?, &wlp[n]).map(|w| w.with_detail("WL"));
            Ok(a.or(b))
        })
    }

    /// `P_n(y) = sum_k W_{n,k} y^(n-2k-1) (1+y^2)^(k+1)` and
    /// `Q_n(y) = sum_k W^l_{n,k} y^(n-2k) (1+y^2)^k`.
    pub fn check_peak_expansion(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (w, wl) = self.w_rows(nmax);
        let (p, q) = derivative_polys(nmax);
        let one_plus_y2 = Poly::from_ints(&[1, 0, 1]);
        let y = Poly::x();
        range_check("derivative.peak_expansion", 1, nmax, |n| {
            let mut ps = Poly::zero();
            for (k, c) in w.row(n).ok_or("missing row")?.iter().enumerate() {
                let t = &y.pow(n - 2 * k - 1) * &one_plus_y2.pow(k + 1);
                ps += &t.scale(&Rational::from_integer(c.clone()));
            }
            let mut qs = Poly::zero();
            for (k, c) in wl.row(n).ok_or("missing row")?.iter().enumerate() {
                let t = &y.pow(n - 2 * k) * &one_plus_y2.pow(k);
                qs += &t.scale(&Rational::from_integer(c.clone()));
            }
            Ok(poly_witness(n, &p[n], &ps)
                .map(|w| w.with_detail("P_n"))
                .or_else(|| poly_witness(n, &q[n], &qs).map(|w| w.with_detail("Q_n"))))
        })
    }

    /// `sum_k W_{n,k} (4x)^k (1+x)^(n-1-2k) = 2^(n-1) A_n(x)`.
    pub fn check_stembridge(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (w, _) = self.w_rows(nmax);
        let a = eulerian_polys(nmax);
        range_check("stembridge", 1, nmax, |n| {
            let lhs = cleared_sum(w.row(n).ok_or("missing row")?, n - 1);
            let rhs = a[n].scale(&Rational::from_integer(two_pow(n - 1)));
            Ok(poly_witness(n, &lhs, &rhs))
        })
    }

    /// `sum_k W^l_{n,k} (4x)^k (1+x)^(n-2k)
    ///   = (1-x)^n + sum_{i=1}^n C(n,i) (1-x)^(n-i) 2^i x A_i(x)`.
    pub fn check_petersen(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (_, wl) = self.w_rows(nmax);
        let a = eulerian_polys(nmax);
        let one_minus_x = Poly::linear(1, -1);
        range_check("petersen", 1, nmax, |n| {
            let lhs = cleared_sum(wl.row(n).ok_or("missing row")?, n);
            let mut rhs = one_minus_x.pow(n);
            for (i, a_i) in a.iter().enumerate().take(n + 1).skip(1) {
                let c = binomial(BigInt::from(n), BigInt::from(i)) * two_pow(i);
                let t = (&one_minus_x.pow(n - i) * a_i).shift(1);
                rhs += &t.scale(&Rational::from_integer(c));
            }
            Ok(poly_witness(n, &lhs, &rhs))
        })
    }

    fn dilks_at(&self, n: usize, w: &CoeffTriangle, wl: &CoeffTriangle, c: &Poly, ct: &Poly) -> Result<Option<Witness>, String> {
        let lhs_ct = cleared_sum(w.row(n).ok_or("missing row")?, n - 1).shift(1).scale(&rat(2));
        let lhs_c = cleared_sum(wl.row(n).ok_or("missing row")?, n);
        Ok(poly_witness(n, &lhs_ct, ct)
            .map(|w| w.with_detail("C̃_n"))
            .or_else(|| poly_witness(n, &lhs_c, c).map(|w| w.with_detail("C_n"))))
    }

    /// `2x sum_k W_{n,k} (4x)^k (1+x)^(n-1-2k) = C̃_n(x)` and
    /// `sum_k W^l_{n,k} (4x)^k (1+x)^(n-2k) = C_n(x)`, against enumerated
    /// signed permutations.
    pub fn check_dilks_oracle(&self) -> CheckResult {
        let cn = self.config.cn;
        let (w, wl) = self.w_rows(cn);
        let oracle = self.config.oracle();
        range_check("dilks.oracle", 1, cn, |n| {
            let (c, ct) = signed_eulerian(n, &oracle).map_err(|e| e.to_string())?;
            self.dilks_at(n, &w, &wl, &c, &ct)
        })
        .with_note("C_n, C̃_n enumerated")
    }

    /// The same identities with `C_n`, `C̃_n` read off their generating
    /// functions, reaching past the enumeration cap.
    pub fn check_dilks_gf(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (w, wl) = self.w_rows(nmax);
        let from_gf = signed_eulerian_from_gf(nmax);
        range_check("dilks.gf", 1, nmax, |n| {
            let (c, ct) = from_gf.as_ref().map_err(|e| e.to_string())?;
            self.dilks_at(n, &w, &wl, &c[n], &ct[n])
        })
        .with_note("C_n, C̃_n from generating functions")
    }

    /// `R_{n+1}` from partial Bell polynomials, and the reductions at
    /// `x = 0` (Stirling numbers) and `x = 1` (factorials).
    pub fn check_bell_and_reductions(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let r = r_polys(nmax + 1);
        range_check("bell_and_reductions", 1, nmax, |n| {
            if let Some(w) = poly_witness(n, &bell_formula_r(n), &r[n + 1]) {
                return Ok(Some(w.with_detail("Bell formula vs R_{n+1}")));
            }
            if !x0_reduction_check(n) {
                return Ok(Some(Witness::detail(n, "x = 0 reduction")));
            }
            if !x1_reduction_check(n) {
                return Ok(Some(Witness::detail(n, "x = 1 reduction")));
            }
            Ok(None)
        })
    }

    /// `P_n`, `Q_n` rebuilt from tangent and secant numbers of higher order.
    pub fn check_cvijovic(&self) -> CheckResult {
        let nmax = self.config.nmax_exact;
        let (p, q) = derivative_polys(nmax);
        range_check("derivative.cvijovic", 0, nmax, |n| {
            let (cp, cq) = cvijovic_reconstruct(n);
            Ok(poly_witness(n, &cp, &p[n])
                .map(|w| w.with_detail("P_n"))
                .or_else(|| poly_witness(n, &cq, &q[n]).map(|w| w.with_detail("Q_n"))))
        })
    }

    /// `P_n(0) + Q_n(0) = E_n` (one of the two vanishes), against the
    /// enumerated alternating permutations.
    pub fn check_euler_values(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle;
        let (p, q) = derivative_polys(nmax);
        let oracle = self.config.oracle();
        range_check("derivative.euler_values", 1, nmax, |n| {
            let at0 = p[n].coeff(0) + q[n].coeff(0);
            let alt = oracle.count_alternating(n).map_err(|e| e.to_string())?;
            Ok(scalar_witness(n, 0, at0, Rational::from_integer(alt), "P_n(0) + Q_n(0) = E_n"))
        })
    }

    /// Enumerated `pk` and `lpk` distributions are the peak triangle rows.
    pub fn check_oracle_peaks(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle;
        let (w, wl) = self.w_rows(nmax);
        let oracle = self.config.oracle();
        range_check("oracle.peaks", 1, nmax, |n| {
            let pk = oracle.distribution(n, PermStat::Pk).map_err(|e| e.to_string())?;
            let lpk = oracle.distribution(n, PermStat::Lpk).map_err(|e| e.to_string())?;
            Ok(poly_witness(n, &pk.to_poly(), &w.row_poly(n).ok_or("missing row")?)
                .map(|w| w.with_detail("pk"))
                .or_else(|| {
                    poly_witness(n, &lpk.to_poly(), &wl.row_poly(n)?).map(|w| w.with_detail("lpk"))
                }))
        })
    }

    /// The R triangle row equals the enumerated peak counts interleaved.
    pub fn check_oracle_interleave(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle;
        let oracle = self.config.oracle();
        range_check("oracle.interleave", 1, nmax, |n| {
            let pk = oracle.distribution(n, PermStat::Pk).map_err(|e| e.to_string())?;
            let lpk = oracle.distribution(n, PermStat::Lpk).map_err(|e| e.to_string())?;
            let inter = Poly::from_bigints(&interleave(&pk.counts, &lpk.counts));
            Ok(poly_witness(n, &self.r_tri.row_poly(n).ok_or("missing row")?, &inter))
        })
    }

    /// Enumerated descent counts are the Eulerian polynomial.
    pub fn check_oracle_eulerian(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle;
        let a = eulerian_polys(nmax);
        let oracle = self.config.oracle();
        range_check("oracle.eulerian", 1, nmax, |n| {
            let des = oracle.distribution(n, PermStat::Des).map_err(|e| e.to_string())?;
            Ok(poly_witness(n, &des.to_poly(), &a[n]))
        })
    }

    /// Every distribution sums to `n!` (or `2^n n!`) and has no internal
    /// zeros.
    pub fn check_oracle_row_sums(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle.max(self.config.cn);
        let oracle = self.config.oracle();
        range_check("oracle.row_sums", 1, nmax, |n| {
            let mut dists = Vec::new();
            if n <= self.config.nmax_oracle {
                for stat in [PermStat::Pk, PermStat::Lpk, PermStat::Des] {
                    let d = oracle.distribution(n, stat).map_err(|e| e.to_string())?;
                    dists.push((d, factorial(n)));
                }
            }
            if n <= self.config.cn {
                for stat in [SignedStat::DesB, SignedStat::Ades] {
                    let d = oracle.signed_distribution(n, stat).map_err(|e| e.to_string())?;
                    dists.push((d, factorial(n) * two_pow(n)));
                }
            }
            for (d, want) in dists {
                let what = format!("{:?}", d.stat);
                if d.total() != want {
                    return Ok(Some(Witness::values(n, 0, d.total(), want).with_detail(what)));
                }
                if !d.has_no_internal_zeros() {
                    return Ok(Some(Witness::detail(n, format!("{what} has an internal zero"))));
                }
            }
            Ok(None)
        })
    }

    /// `lpk - pk ∈ {0, 1}` and the statistic ranges hold permutation by
    /// permutation.
    pub fn check_oracle_peak_ranges(&self) -> CheckResult {
        let oracle = self.config.oracle();
        range_check("oracle.peak_ranges", 1, self.config.nmax_oracle, |n| {
            let bad = oracle.find_peak_range_violation(n).map_err(|e| e.to_string())?;
            Ok(bad.map(|pi| Witness::detail(n, format!("offending permutation {pi:?}"))))
        })
    }

    /// Alternating and reverse alternating permutations are equinumerous
    /// (complementation) and counted by `E_n`.
    pub fn check_oracle_complementation(&self) -> CheckResult {
        let nmax = self.config.nmax_oracle;
        let e = euler_numbers(nmax);
        let oracle = self.config.oracle();
        range_check("oracle.complementation", 1, nmax, |n| {
            let alt = oracle.count_alternating(n).map_err(|e| e.to_string())?;
            let rev = oracle.count_reverse_alternating(n).map_err(|e| e.to_string())?;
            Ok(scalar_witness(n, 0, alt.clone(), rev, "alternating vs reverse alternating")
                .or_else(|| scalar_witness(n, 0, alt, e[n].clone(), "alternating vs E_n")))
        })
    }

    /// One shard and many shards give identical counts.
    pub fn check_oracle_sharding(&self) -> CheckResult {
        let single = self.config.oracle().with_jobs(1);
        let many = self.config.oracle().with_jobs(4);
        range_check("oracle.sharding", 1, self.config.nmax_oracle, |n| {
            let a = single.distribution(n, PermStat::Pk).map_err(|e| e.to_string())?;
            let b = many.distribution(n, PermStat::Pk).map_err(|e| e.to_string())?;
            if let Some(w) = poly_witness(n, &a.to_poly(), &b.to_poly()) {
                return Ok(Some(w.with_detail("pk")));
            }
            if n <= self.config.cn {
                let a = single.signed_distribution(n, SignedStat::Ades).map_err(|e| e.to_string())?;
                let b = many.signed_distribution(n, SignedStat::Ades).map_err(|e| e.to_string())?;
                return Ok(poly_witness(n, &a.to_poly(), &b.to_poly()).map(|w| w.with_detail("ades")));
            }
            Ok(None)
        })
    }

    fn root_reports(&self, nmax: usize) -> Vec<Result<RootReport, String>> {
        let r = r_polys(nmax);
        (1..=nmax)
            .into_par_iter()
            .map(|n| verify_structure(n, &r[n]).map_err(|e| e.to_string()))
            .collect()
    }

    /// Zero structure of `R_n`, interlacing of `R_n` and `R_{n+1}`, and the
    /// location of the largest coefficient.
    pub fn roots_checks(&self) -> Vec<CheckResult> {
        let nmax = self.config.roots_nmax;
        let reports = self.root_reports(nmax + 1);
        let structure = range_check("roots.structure", 1, nmax, |n| reports[n - 1].clone().map(|_| None));
        let interlacing = range_check("roots.interlacing", 1, nmax, |n| {
            let (a, b) = (reports[n - 1].as_ref()?, reports[n].as_ref()?);
            Ok(interlacing_between(n, a, b).err().map(|e| Witness::detail(n, e.to_string())))
        });
        let r = r_polys(nmax);
        let mut ties = Vec::new();
        let mut mode = range_check("roots.mode", 2, nmax, |n| {
            let m = mode_check_row(n, &r[n]);
            Ok((!m.in_bracket).then(|| {
                Witness::values(n, m.argmax[0], m.max.clone(), m.target.clone())
                    .with_detail("argmax outside the bracket around (2n-1)/3")
            }))
        });
        for (n, r_n) in r.iter().enumerate().skip(2) {
            let m = mode_check_row(n, r_n);
            if m.tie() {
                ties.push(format!("n={n}: {:?}", m.argmax));
            }
        }
        if !ties.is_empty() {
            mode = mode.with_note(format!("ties {}", ties.join("; ")));
        }
        vec![structure, interlacing, mode]
    }

    /// One result per `n` in `4..=clt_nmax` for the exact mean and variance
    /// formulas.
    pub fn clt_checks(&self) -> Vec<CheckResult> {
        let nmax = self.config.clt_nmax;
        let r = r_polys(nmax);
        (4..=nmax)
            .map(|n| {
                let w = clt_closed_forms(&clt_stats_of(n, &r[n]))
                    .err()
                    .map(|m| Witness::values(n, 0, m.got, m.want).with_detail(m.quantity));
                CheckResult::from_witness("clt", n, n, w)
            })
            .collect()
    }
}

/// Aggregate verdict of a run.
pub fn aggregate(results: &[CheckResult]) -> Verdict {
    if results.iter().all(CheckResult::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Full report, serialized with a stable key and result order.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub configuration: ReportConfiguration,
    pub results: Vec<CheckResult>,
    pub aggregate: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportConfiguration {
    pub suite: &'static str,
    #[serde(flatten)]
    pub limits: SuiteConfig,
}

impl ReportDocument {
    pub fn new(tool_version: &str, suite: SuiteKind, config: SuiteConfig, results: Vec<CheckResult>) -> Self {
        ReportDocument {
            tool_version: tool_version.to_string(),
            configuration: ReportConfiguration {
                suite: suite.name(),
                limits: config,
            },
            aggregate: aggregate(&results),
            results,
        }
    }
}

/// Runs `kind` under `config`.
pub fn run_all(config: SuiteConfig, kind: SuiteKind) -> Result<Vec<CheckResult>, ConfigError> {
    Suite::new(config).run(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            nmax_exact: 6,
            nmax_oracle: 6,
            cn: 4,
            gf_order: 6,
            roots_nmax: 6,
            clt_nmax: 8,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn interleave_row_four() {
        let w: Vec<BigInt> = [8, 16].map(BigInt::from).to_vec();
        let wl: Vec<BigInt> = [1, 18, 5].map(BigInt::from).to_vec();
        let want: Vec<BigInt> = [1, 8, 18, 16, 5].map(BigInt::from).to_vec();
        assert_eq!(interleave(&w, &wl), want);
    }

    #[test]
    fn cleared_sum_examples() {
        let w3: Vec<BigInt> = [4, 2].map(BigInt::from).to_vec();
        assert_eq!(cleared_sum(&w3, 2), Poly::from_ints(&[4, 16, 4]));
        let wl2: Vec<BigInt> = [1, 1].map(BigInt::from).to_vec();
        assert_eq!(cleared_sum(&wl2, 2), Poly::from_ints(&[1, 6, 1]));
    }

    #[test]
    fn small_suite_passes() {
        let results = run_all(small(), SuiteKind::All).unwrap();
        for r in &results {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(results.iter().filter(|r| r.check_id == "clt").count(), 5);
    }

    #[test]
    fn degenerate_range_passes() {
        let cfg = SuiteConfig {
            nmax_exact: 1,
            ..small()
        };
        let results = run_all(cfg, SuiteKind::Identities).unwrap();
        assert!(results.iter().all(CheckResult::passed));
    }

    #[test]
    fn corrupted_triangle_gives_minimal_witness() {
        let mut suite = Suite::new(small());
        suite.corrupt_r_triangle(5, 2, 1);
        let results = suite.run(SuiteKind::Identities).unwrap();
        let tri = results.iter().find(|r| r.check_id == "triangle.trirelation").unwrap();
        assert_eq!(tri.verdict, Verdict::Fail);
        let w = tri.witness.as_ref().unwrap();
        assert_eq!((w.n, w.index), (5, Some(2)));
        assert_eq!(w.lhs.as_deref(), Some("59"));
        assert_eq!(w.rhs.as_deref(), Some("58"));
        let rp = results.iter().find(|r| r.check_id == "triangle.r_poly").unwrap();
        assert_eq!(rp.witness.as_ref().map(|w| (w.n, w.index)), Some((5, Some(2))));
    }

    #[test]
    fn order_and_jobs_do_not_change_results() {
        let one = Suite::new(SuiteConfig { jobs: 1, ..small() }).run(SuiteKind::All).unwrap();
        let many = Suite::new(SuiteConfig { jobs: 4, ..small() }).run(SuiteKind::All).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn config_validation() {
        let bad = SuiteConfig {
            roots_nmax: 0,
            ..SuiteConfig::default()
        };
        assert!(matches!(bad.validate(SuiteKind::Roots), Err(ConfigError::InvalidRange(_))));
        let big = SuiteConfig {
            nmax_oracle: 11,
            ..SuiteConfig::default()
        };
        assert!(matches!(big.validate(SuiteKind::Oracle), Err(ConfigError::LimitExceeded { .. })));
        assert_eq!(SuiteConfig::default().validate(SuiteKind::All), Ok(()));
    }
}
