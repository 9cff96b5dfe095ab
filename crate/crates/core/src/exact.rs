//! Exact scalars and dense univariate polynomials.
//!
//! Every family in the crate is a polynomial with integer (occasionally
//! rational) coefficients, so the whole stack sits on [`Rational`] and
//! [`Poly`]. Values are immutable once built; every operation returns a new
//! value.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always stored gcd-reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`, normalized.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    NonzeroRemainder,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("clear power {power} is smaller than the degree {degree}")]
    ClearPowerTooSmall { power: usize, degree: usize },
}

/// Dense polynomial in one variable; `coeffs[i]` is the coefficient of `x^i`.
///
/// The highest stored coefficient is never zero. The zero polynomial stores
/// no coefficients and has no degree (`degree()` returns `None`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints<'a>(coeffs: impl IntoIterator<Item = &'a BigInt>) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `a + b x`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_ints(&[a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Poly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, by: &Rational) -> Poly {
        if by.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(x^2)`.
    pub fn subst_square(&self) -> Poly {
        let mut coeffs = vec![Rational::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Long division. Fails only on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dlead = d.leading().ok_or(PolyError::DivisionByZeroPoly)?;
        let ddeg = d.coeffs.len() - 1;
        if self.coeffs.len() <= ddeg {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = dlead.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + ddeg] * &inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(ddeg);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient `q` with `self = q * d`, or [`PolyError::NonzeroRemainder`].
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonzeroRemainder)
        }
    }

    /// `den^clear_power * self(num / den)`, expanded as
    /// `sum_k c_k num^k den^(clear_power - k)`.
    pub fn subst_cleared(
        &self,
        num: &Poly,
        den: &Poly,
        clear_power: usize,
    ) -> Result<Poly, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Poly::zero());
        };
        if clear_power < deg {
            return Err(PolyError::ClearPowerTooSmall {
                power: clear_power,
                degree: deg,
            });
        }
        let mut num_pow = Poly::one();
        let mut out = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = (&num_pow * &den.pow(clear_power - k)).scale(c);
                out += &term;
            }
            num_pow = &num_pow * num;
        }
        Ok(out)
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// True when `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// The scale factor is positive, so signs at every point are preserved.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &lcm_den).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::from_coeffs(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &content))
                .collect(),
        )
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Comma-separated coefficients ascending by degree; rationals as `p/q`.
    /// The zero polynomial prints as `0`.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) if mag.is_integer() => write!(f, "{mag}*")?,
                (_, false) => write!(f, "({mag})*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_r3() {
        let r3 = Poly::from_ints(&[1, 4, 5, 2]);
        assert_eq!(r3.derivative(), Poly::from_ints(&[4, 10, 6]));
        assert!(Poly::one().derivative().is_zero());
    }

    #[test]
    fn derivative_of_binomial_power_at_one() {
        // (1+x)^4 = 1 + 4x + 6x^2 + 4x^3 + x^4, derivative 4 + 12x + 12x^2 + 4x^3
        let p = Poly::linear(1, 1).pow(4);
        assert_eq!(p, Poly::from_ints(&[1, 4, 6, 4, 1]));
        assert_eq!(p.derivative().eval(&rat(1)), rat(32));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(Poly::from_ints(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn exact_division_examples() {
        let r2 = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(r2.exact_div(&Poly::linear(1, 1)), Ok(Poly::linear(1, 1)));
        let r4 = Poly::from_ints(&[1, 8, 18, 16, 5]);
        assert_eq!(
            r4.exact_div(&Poly::linear(1, 1).pow(3)),
            Ok(Poly::linear(1, 5))
        );
        assert_eq!(
            Poly::linear(1, 1).exact_div(&Poly::linear(1, 2)),
            Err(PolyError::NonzeroRemainder)
        );
        assert_eq!(
            Poly::one().exact_div(&Poly::zero()),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn cleared_substitution_examples() {
        let w3 = Poly::from_ints(&[4, 2]);
        let num = Poly::from_ints(&[0, 4]);
        let den = Poly::linear(1, 1).pow(2);
        let got = w3.subst_cleared(&num, &den, 1).unwrap();
        assert_eq!(got, Poly::from_ints(&[4, 16, 4]));
        assert_eq!(got, Poly::from_ints(&[1, 4, 1]).scale(&rat(4)));

        assert_eq!(Poly::one().subst_cleared(&num, &den, 0).unwrap(), Poly::one());
        let sq = Poly::x()
            .subst_cleared(&Poly::monomial(rat(1), 2), &Poly::one(), 1)
            .unwrap();
        assert_eq!(sq, Poly::monomial(rat(1), 2));

        assert_eq!(
            w3.subst_cleared(&num, &den, 0),
            Err(PolyError::ClearPowerTooSmall { power: 0, degree: 1 })
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = Poly::linear(1, 1).pow(2) * Poly::linear(1, 2);
        let b = Poly::linear(1, 1) * Poly::linear(2, 3);
        assert_eq!(a.gcd(&b), Poly::linear(1, 1));
        assert!(!a.is_squarefree());
        assert!(Poly::from_ints(&[1, 13, 16]).is_squarefree());
    }

    #[test]
    fn primitive_part_keeps_sign() {
        let p = Poly::from_coeffs(vec![ratio(-1, 2), ratio(3, 4)]);
        assert_eq!(p.primitive_part(), Poly::from_ints(&[-2, 3]));
    }

    #[test]
    fn display_and_csv() {
        let p = Poly::from_coeffs(vec![rat(2), rat(-1), ratio(1, 3)]);
        assert_eq!(p.to_string(), "2 - x + (1/3)*x^2");
        assert_eq!(p.to_csv(), "2,-1,1/3");
        assert_eq!(Poly::zero().to_csv(), "0");
    }
}
