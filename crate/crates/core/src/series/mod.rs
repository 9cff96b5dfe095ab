//! Truncated power series in `z` whose coefficients are polynomials in `x`.
//!
//! Generating functions are compared only after cross-multiplying away their
//! denominators, so every check reduces to equality of exact polynomial
//! coefficients. Square roots such as `√(1-x)` never appear: `cosh(z√w)` and
//! `sinh(z√w)/√w` are both power series in `z` with polynomial coefficients
//! in `w`, and every closed form can be rewritten in terms of that pair.

mod numeric;
mod verify;

pub use numeric::{numeric_gf_spotcheck, NumericSpotcheck};
pub use verify::{verify_gf, verify_pde, verify_t_from_a, GfFamily, GfVerdict, SeriesMismatch};

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{Poly, PolyError, Rational};
use crate::families::{factorial, FamilyError};

/// Largest `z`-order the verification routines will build families for.
pub const MAX_GF_ORDER: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("unknown generating-function family `{0}`")]
    UnknownFamily(String),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderExceedsComputedFamilies { order: usize, max: usize },
    #[error("relative difference {rel_diff} exceeds tolerance {tol}")]
    ToleranceExceeded { rel_diff: String, tol: String },
    #[error("truncation bound {bound} cannot certify tolerance {tol}")]
    PrecisionInsufficient { bound: String, tol: String },
    #[error("evaluation point outside the supported domain: {0}")]
    OutOfDomain(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `sum_{m=0}^{order} coeffs[m] z^m`; terms above `order` are unknown, not
/// zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    /// Pads with zeros or drops terms so exactly `order + 1` remain.
    pub fn new(order: usize, mut coeffs: Vec<Poly>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        TruncSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(p: Poly, order: usize) -> Self {
        Self::new(order, vec![p])
    }

    /// Exponential generating function: coefficient `m` is `family(m) / m!`.
    pub fn from_egf(order: usize, mut family: impl FnMut(usize) -> Poly) -> Self {
        let coeffs = (0..=order)
            .map(|m| {
                let f = Rational::from_integer(factorial(m));
                family(m).scale(&f.recip())
            })
            .collect();
        TruncSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &Poly {
        &self.coeffs[m]
    }

    /// `m! * [z^m]`, undoing the EGF normalization.
    pub fn egf_coeff(&self, m: usize) -> Poly {
        self.coeffs[m].scale(&Rational::from_integer(factorial(m)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order), self.coeffs.clone())
    }

    pub fn scale(&self, by: &Poly) -> Self {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    /// `∂/∂z`; the result is known one order less.
    pub fn deriv_z(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c.scale(&Rational::from_integer(BigInt::from(m))))
            .collect();
        Self::new(self.order.saturating_sub(1), coeffs)
    }

    /// `∂/∂x`, termwise.
    pub fn deriv_x(&self) -> Self {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(Poly::derivative).collect(),
        }
    }

    /// `z * self`, gaining one order.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = vec![Poly::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries {
            order: self.order + 1,
            coeffs,
        }
    }

    /// Substitutes `z -> c z`.
    pub fn rescale_z(&self, c: &Poly) -> Self {
        let mut pow = Poly::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &pow;
                pow = &pow * c;
                out
            })
            .collect();
        TruncSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Solves `y * den = num` for `y`, dividing exactly by `den`'s constant
    /// term at every order. Fails if some coefficient of `y` is not a
    /// polynomial.
    pub fn solve(num: &TruncSeries, den: &TruncSeries) -> Result<TruncSeries, PolyError> {
        let order = num.order.min(den.order);
        let d0 = &den.coeffs[0];
        let mut y: Vec<Poly> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut rhs = num.coeffs[m].clone();
            for (j, yj) in y.iter().enumerate() {
                rhs = &rhs - &(yj * &den.coeffs[m - j]);
            }
            y.push(rhs.exact_div(d0)?);
        }
        Ok(TruncSeries { order, coeffs: y })
    }

    /// First order where the two series differ, compared up to the smaller
    /// truncation order.
    pub fn first_mismatch(&self, other: &TruncSeries) -> Option<SeriesMismatch> {
        let order = self.order.min(other.order);
        (0..=order)
            .find(|&m| self.coeffs[m] != other.coeffs[m])
            .map(|m| SeriesMismatch {
                power: m,
                lhs: self.coeffs[m].clone(),
                rhs: other.coeffs[m].clone(),
            })
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|m| &self.coeffs[m] + &rhs.coeffs[m]).collect();
        TruncSeries { order, coeffs }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|m| &self.coeffs[m] - &rhs.coeffs[m]).collect();
        TruncSeries { order, coeffs }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|m| {
                let mut acc = Poly::zero();
                for i in 0..=m {
                    let (a, b) = (&self.coeffs[i], &rhs.coeffs[m - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect();
        TruncSeries { order, coeffs }
    }
}

/// `(cosh(z√w), sinh(z√w)/√w)` as exact series:
/// `sum_m w^m z^(2m)/(2m)!` and `sum_m w^m z^(2m+1)/(2m+1)!`.
pub fn hyper_blocks(w: &Poly, order: usize) -> (TruncSeries, TruncSeries) {
    let mut c = vec![Poly::zero(); order + 1];
    let mut s = vec![Poly::zero(); order + 1];
    let mut w_pow = Poly::one();
    let mut m = 0;
    while 2 * m <= order {
        let even = Rational::from_integer(factorial(2 * m)).recip();
        c[2 * m] = w_pow.scale(&even);
        if 2 * m < order {
            let odd = Rational::from_integer(factorial(2 * m + 1)).recip();
            s[2 * m + 1] = w_pow.scale(&odd);
        }
        w_pow = &w_pow * w;
        m += 1;
    }
    (TruncSeries::new(order, c), TruncSeries::new(order, s))
}

/// `exp(c z) = sum_m c^m z^m / m!`.
pub fn exp_series(c: &Poly, order: usize) -> TruncSeries {
    let mut pow = Poly::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let f = Rational::from_integer(factorial(m)).recip();
        coeffs.push(pow.scale(&f));
        pow = &pow * c;
    }
    TruncSeries { order, coeffs }
}

/// `C_n` and `C̃_n` for `n = 0..=order` read off their generating functions
/// `(1-x) e^(z(1-x)) / (1 - x e^(2z(1-x)))` and `(1-x) / (1 - x e^(2z(1-x)))`.
/// Index 0 holds the constant term `1` of each series.
pub fn signed_eulerian_from_gf(order: usize) -> Result<(Vec<Poly>, Vec<Poly>), PolyError> {
    let one_minus_x = Poly::linear(1, -1);
    let den = signed_denominator(order);
    let c_num = exp_series(&one_minus_x, order).scale(&one_minus_x);
    let ct_num = TruncSeries::constant(one_minus_x, order);
    let c = TruncSeries::solve(&c_num, &den)?;
    let ct = TruncSeries::solve(&ct_num, &den)?;
    Ok((
        (0..=order).map(|m| c.egf_coeff(m)).collect(),
        (0..=order).map(|m| ct.egf_coeff(m)).collect(),
    ))
}

/// `1 - x e^(2z(1-x))`.
fn signed_denominator(order: usize) -> TruncSeries {
    let e = exp_series(&Poly::linear(2, -2), order).scale(&Poly::x());
    &TruncSeries::constant(Poly::one(), order) - &e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn hyper_blocks_examples() {
        let (c, _) = hyper_blocks(&Poly::one(), 4);
        let want: Vec<Poly> = [rat(1), rat(0), ratio(1, 2), rat(0), ratio(1, 24)]
            .into_iter()
            .map(Poly::constant)
            .collect();
        assert_eq!(c.coeffs(), want.as_slice());

        let (c0, s0) = hyper_blocks(&Poly::zero(), 3);
        assert_eq!(c0, TruncSeries::constant(Poly::one(), 3));
        assert_eq!(s0, TruncSeries::new(3, vec![Poly::zero(), Poly::one()]));

        let (_, s) = hyper_blocks(&Poly::linear(1, -1), 3);
        assert_eq!(s.coeff(3), &Poly::linear(1, -1).scale(&ratio(1, 6)));
    }

    #[test]
    fn exp_series_examples() {
        assert_eq!(exp_series(&Poly::zero(), 5), TruncSeries::constant(Poly::one(), 5));
        let w = Poly::linear(1, -1);
        let e = exp_series(&w, 2);
        assert_eq!(e.coeff(1), &w);
        assert_eq!(e.coeff(2), &w.pow(2).scale(&ratio(1, 2)));
        let e2 = exp_series(&Poly::linear(2, -2), 2);
        assert_eq!(e2.coeff(2), &w.pow(2).scale(&rat(2)));
    }

    #[test]
    fn derivatives_track_order() {
        let s = exp_series(&Poly::x(), 5);
        assert_eq!(s.deriv_z().order(), 4);
        assert_eq!(s.deriv_x().order(), 5);
        // d/dz exp(xz) = x exp(xz)
        assert_eq!(s.deriv_z(), s.truncate(4).scale(&Poly::x()));
    }

    #[test]
    fn solve_recovers_quotient() {
        let a = exp_series(&Poly::linear(1, 1), 6);
        let b = &TruncSeries::constant(Poly::linear(1, -1), 6) - &exp_series(&Poly::x(), 6).mul_z();
        let prod = &a * &b;
        assert_eq!(TruncSeries::solve(&prod, &b).unwrap(), a);
    }

    #[test]
    fn gf_sourced_signed_eulerian() {
        let (c, ct) = signed_eulerian_from_gf(3).unwrap();
        assert_eq!(c[0], Poly::one());
        assert_eq!(c[1], Poly::linear(1, 1));
        assert_eq!(c[2], Poly::from_ints(&[1, 6, 1]));
        assert_eq!(ct[1], Poly::from_ints(&[0, 2]));
        assert_eq!(ct[2], Poly::from_ints(&[0, 4, 4]));
    }
}
