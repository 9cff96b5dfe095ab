//! Floating-point evaluation of the transcendental closed form of `R(x,t)`.
//!
//! The exact checks use an algebraic rewriting of
//! `R(x,t) = (1-x^2) / (x (cosh z - 1))`, `z = -t√(1-x^2) + arccosh(1/x)`.
//! This module evaluates the literal form at a point with a 320-bit
//! mantissa and compares it with the exact partial sum of
//! `sum_n R_{n+1}(x0) t0^n / n!`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{One, Signed, Zero};

use crate::exact::{ratio, Rational};
use crate::families::{factorial, r_polys};

use super::SeriesError;

const PRECISION: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSpotcheck {
    pub x0: Rational,
    pub t0: Rational,
    pub order: usize,
    pub tol: f64,
    /// Closed form, 25 significant digits.
    pub closed_form: String,
    /// Exact partial sum rounded to 25 significant digits.
    pub partial_sum: String,
    pub rel_diff: f64,
    /// Upper bound on the dropped tail of the series.
    pub remainder_bound: f64,
}

fn to_float(q: &Rational, cc: &mut Consts) -> BigFloat {
    let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, PRECISION, RM, cc);
    let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, PRECISION, RM, cc);
    n.div(&d, PRECISION, RM)
}

fn to_f64(v: &BigFloat, cc: &mut Consts) -> f64 {
    v.format(Radix::Dec, RM, cc)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

fn short(v: f64) -> String {
    format!("{v:.18e}")
}

/// Tail bound for `sum_{n > order} R_{n+1}(x0) t^n / n!` when `0 < x0 < 1`.
///
/// Every `R_{n+1}` has positive coefficients, so `R_{n+1}(x0) ≤ R_{n+1}(1) =
/// 2 (n+1)!` and each tail term is at most `2 (n+1) |t|^n`. Summing,
/// `sum_{n ≥ N+1} (n+1) s^n = s^(N+1) ((N+2) - (N+1) s) / (1-s)^2`.
pub fn remainder_bound(order: usize, t0: &Rational) -> Rational {
    let s = t0.abs();
    let n1 = Rational::from_integer((order + 1).into());
    let n2 = Rational::from_integer((order + 2).into());
    let one = Rational::one();
    let pow = num_traits::pow(s.clone(), order + 1);
    let two = Rational::from_integer(2.into());
    two * pow * (n2 - n1 * &s) / ((&one - &s) * (&one - &s))
}

/// Compares the literal closed form of `R(x0, t0)` against the truncated
/// series. Requires `0 < x0 < 1` and `|t0| < 1/4`; fails with
/// [`SeriesError::PrecisionInsufficient`] when the tail bound alone could
/// exceed `tol` and with [`SeriesError::ToleranceExceeded`] when the
/// relative difference does.
pub fn numeric_gf_spotcheck(
    x0: &Rational,
    t0: &Rational,
    order: usize,
    tol: f64,
) -> Result<NumericSpotcheck, SeriesError> {
    if !(x0.is_positive() && x0 < &Rational::one()) {
        return Err(SeriesError::OutOfDomain(format!("x0 = {x0} not in (0, 1)")));
    }
    if t0.abs() >= ratio(1, 4) {
        return Err(SeriesError::OutOfDomain(format!("|t0| = {} not below 1/4", t0.abs())));
    }
    let mut cc = Consts::new().map_err(|e| SeriesError::OutOfDomain(format!("{e:?}")))?;

    let r = r_polys(order + 1);
    let mut partial = Rational::zero();
    let mut t_pow = Rational::one();
    for n in 0..=order {
        let term = r[n + 1].eval(x0) * &t_pow / Rational::from_integer(factorial(n));
        partial += term;
        t_pow *= t0;
    }
    let bound = remainder_bound(order, t0);

    let x = to_float(x0, &mut cc);
    let t = to_float(t0, &mut cc);
    let one = BigFloat::from_word(1, PRECISION);
    let one_minus_x2 = one.sub(&x.mul(&x, PRECISION, RM), PRECISION, RM);
    let root = one_minus_x2.sqrt(PRECISION, RM);
    let arc = one.div(&x, PRECISION, RM).acosh(PRECISION, RM, &mut cc);
    let z = arc.sub(&t.mul(&root, PRECISION, RM), PRECISION, RM);
    let cosh_minus_one = z.cosh(PRECISION, RM, &mut cc).sub(&one, PRECISION, RM);
    let closed = one_minus_x2.div(&x.mul(&cosh_minus_one, PRECISION, RM), PRECISION, RM);

    let series = to_float(&partial, &mut cc);
    let diff = closed.sub(&series, PRECISION, RM).abs();
    let rel = diff.div(&closed.abs(), PRECISION, RM);
    let rel_diff = to_f64(&rel, &mut cc);
    let closed_f = to_f64(&closed, &mut cc);
    let bound_f = to_f64(&to_float(&bound, &mut cc), &mut cc);

    let report = NumericSpotcheck {
        x0: x0.clone(),
        t0: t0.clone(),
        order,
        tol,
        closed_form: short(closed_f),
        partial_sum: short(to_f64(&series, &mut cc)),
        rel_diff,
        remainder_bound: bound_f,
    };
    if bound_f.is_nan() || bound_f > tol * closed_f.abs() {
        return Err(SeriesError::PrecisionInsufficient {
            bound: format!("{bound_f:e}"),
            tol: format!("{tol:e}"),
        });
    }
    if rel_diff.is_nan() || rel_diff > tol {
        return Err(SeriesError::ToleranceExceeded {
            rel_diff: format!("{rel_diff:e}"),
            tol: format!("{tol:e}"),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_checks_pass() {
        let a = numeric_gf_spotcheck(&ratio(1, 2), &ratio(1, 20), 20, 1e-15).unwrap();
        assert!(a.rel_diff <= 1e-15);
        let b = numeric_gf_spotcheck(&ratio(7, 10), &ratio(1, 10), 24, 1e-12).unwrap();
        assert!(b.rel_diff <= 1e-12);
    }

    #[test]
    fn t_zero_gives_one_plus_x() {
        let r = numeric_gf_spotcheck(&ratio(1, 2), &Rational::zero(), 4, 1e-30).unwrap();
        assert!((r.closed_form.parse::<f64>().unwrap() - 1.5).abs() < 1e-15);
        assert!(r.rel_diff < 1e-60);
    }

    #[test]
    fn domain_and_precision_errors() {
        assert!(matches!(
            numeric_gf_spotcheck(&ratio(3, 2), &ratio(1, 20), 10, 1e-12),
            Err(SeriesError::OutOfDomain(_))
        ));
        assert!(matches!(
            numeric_gf_spotcheck(&ratio(1, 2), &ratio(1, 5), 2, 1e-12),
            Err(SeriesError::PrecisionInsufficient { .. })
        ));
    }

    #[test]
    fn tail_bound_formula() {
        // order 0, s = 1/10: sum_{n>=1} 2(n+1) s^n = 2 (1/(1-s)^2 - 1) = 2 * 19/81
        assert_eq!(remainder_bound(0, &ratio(1, 10)), ratio(38, 81));
    }
}
