use std::fmt;
use std::str::FromStr;

use crate::exact::Poly;
use crate::families::{
    eulerian_polys, r_polys, signed_eulerian, signed_eulerian_from_peaks, t_poly_from,
    w_polys_by_recurrence,
};
use crate::oracle::Oracle;

use super::{exp_series, hyper_blocks, signed_denominator, SeriesError, TruncSeries, MAX_GF_ORDER};

/// A generating function checked in cross-multiplied form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfFamily {
    /// Eulerian polynomials.
    A,
    /// Interior peaks.
    W,
    /// Left peaks.
    Wl,
    /// `P(x,z) = sum_n R_n(x) z^n / n!`.
    P,
    /// Type-B Eulerian polynomials.
    C,
    /// Affine Eulerian polynomials.
    Ct,
    T,
    /// `R(x,t) = sum_n R_{n+1}(x) t^n / n!`.
    R,
}

impl GfFamily {
    pub const ALL: [GfFamily; 8] = [
        GfFamily::A,
        GfFamily::W,
        GfFamily::Wl,
        GfFamily::P,
        GfFamily::C,
        GfFamily::Ct,
        GfFamily::T,
        GfFamily::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GfFamily::A => "A",
            GfFamily::W => "W",
            GfFamily::Wl => "WL",
            GfFamily::P => "P",
            GfFamily::C => "C",
            GfFamily::Ct => "CT",
            GfFamily::T => "T",
            GfFamily::R => "R",
        }
    }
}

impl fmt::Display for GfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfFamily {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GfFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SeriesError::UnknownFamily(s.to_string()))
    }
}

/// Where two series (or a polynomial identity indexed by `power`) first
/// disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub power: usize,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfVerdict {
    pub check: String,
    pub order: usize,
    pub mismatch: Option<SeriesMismatch>,
}

impl GfVerdict {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn check_order(order: usize) -> Result<(), SeriesError> {
    if order > MAX_GF_ORDER {
        return Err(SeriesError::OrderExceedsComputedFamilies {
            order,
            max: MAX_GF_ORDER,
        });
    }
    Ok(())
}

/// `C_n` and `C̃_n` for `n = 0..=order`: enumerated inside the oracle's
/// range, derived from the peak polynomials past it. Index 0 is `1`.
pub(crate) fn signed_families(
    order: usize,
    oracle: &Oracle,
) -> Result<(Vec<Poly>, Vec<Poly>), SeriesError> {
    let mut c = vec![Poly::one()];
    let mut ct = vec![Poly::one()];
    for n in 1..=order {
        let (a, b) = if n <= oracle.limits.cn_max {
            signed_eulerian(n, oracle)?
        } else {
            signed_eulerian_from_peaks(n)?
        };
        c.push(a);
        ct.push(b);
    }
    Ok((c, ct))
}

fn t_families(order: usize, oracle: &Oracle) -> Result<Vec<Poly>, SeriesError> {
    let (c, ct) = signed_families(order, oracle)?;
    let mut t = vec![Poly::one()];
    for n in 1..=order {
        t.push(t_poly_from(&c[n], &ct[n])?);
    }
    Ok(t)
}

fn one(order: usize) -> TruncSeries {
    TruncSeries::constant(Poly::one(), order)
}

/// Checks one generating function up to `z^order` as an exact identity
/// between truncated series, with the left factor built from the
/// recurrence-side (or enumerated) polynomials:
///
/// * `A`: `A(x,z) (1 - x e^(z(1-x))) = (1-x) e^(z(1-x))`
/// * `W`: `W(x,z) (C_w - S_w) = S_w`, `w = 1-x`
/// * `WL`: `W^l(x,z) (C_w - S_w) = 1`, `w = 1-x`
/// * `P`: `P(x,z) (C_w - S_w) = 1 + x S_w`, `w = 1-x^2`
/// * `C`: `C(x,z) (1 - x e^(2z(1-x))) = (1-x) e^(z(1-x))`
/// * `CT`: `C̃(x,z) (1 - x e^(2z(1-x))) = 1-x`
/// * `T`: `T(x,z) (1 - x e^(z(1-x^2))) = e^(z(1-x^2)) - x`
/// * `R`: `R(x,t) (1 - x + sum_{i≥1} (-1)^i y_i t^i/i!) = 1 - x^2`,
///   `y_i = (1-x^2)^⌊(i+1)/2⌋`
///
/// where `C_w = cosh(z√w)` and `S_w = sinh(z√w)/√w` (see [`hyper_blocks`]).
pub fn verify_gf(family: GfFamily, order: usize, oracle: &Oracle) -> Result<GfVerdict, SeriesError> {
    check_order(order)?;
    let one_minus_x = Poly::linear(1, -1);
    let one_minus_x2 = Poly::from_ints(&[1, 0, -1]);
    let (lhs, rhs) = match family {
        GfFamily::A => {
            let a = eulerian_polys(order);
            let series = TruncSeries::from_egf(order, |m| a[m].clone());
            let e = exp_series(&one_minus_x, order);
            let den = &one(order) - &e.scale(&Poly::x());
            (&series * &den, e.scale(&one_minus_x))
        }
        GfFamily::W | GfFamily::Wl => {
            let (w, wl) = w_polys_by_recurrence(order);
            let (cw, sw) = hyper_blocks(&one_minus_x, order);
            let den = &cw - &sw;
            if family == GfFamily::W {
                (&TruncSeries::from_egf(order, |m| w[m].clone()) * &den, sw)
            } else {
                (&TruncSeries::from_egf(order, |m| wl[m].clone()) * &den, one(order))
            }
        }
        GfFamily::P => {
            let r = r_polys(order);
            let (cw, sw) = hyper_blocks(&one_minus_x2, order);
            let series = TruncSeries::from_egf(order, |m| r[m].clone());
            (&series * &(&cw - &sw), &one(order) + &sw.scale(&Poly::x()))
        }
        GfFamily::C | GfFamily::Ct => {
            let (c, ct) = signed_families(order, oracle)?;
            let den = signed_denominator(order);
            if family == GfFamily::C {
                let series = TruncSeries::from_egf(order, |m| c[m].clone());
                (&series * &den, exp_series(&one_minus_x, order).scale(&one_minus_x))
            } else {
                let series = TruncSeries::from_egf(order, |m| ct[m].clone());
                (&series * &den, TruncSeries::constant(one_minus_x, order))
            }
        }
        GfFamily::T => {
            let t = t_families(order, oracle)?;
            let series = TruncSeries::from_egf(order, |m| t[m].clone());
            let e = exp_series(&one_minus_x2, order);
            let den = &one(order) - &e.scale(&Poly::x());
            (&series * &den, &e - &TruncSeries::constant(Poly::x(), order))
        }
        GfFamily::R => {
            let r = r_polys(order + 1);
            let series = TruncSeries::from_egf(order, |m| r[m + 1].clone());
            let den = TruncSeries::from_egf(order, |i| {
                if i == 0 {
                    one_minus_x.clone()
                } else {
                    let y = one_minus_x2.pow(i.div_ceil(2));
                    if i % 2 == 1 {
                        -y
                    } else {
                        y
                    }
                }
            });
            (&series * &den, TruncSeries::constant(one_minus_x2, order))
        }
    };
    Ok(GfVerdict {
        check: format!("gf.{}", family.name().to_ascii_lowercase()),
        order,
        mismatch: lhs.first_mismatch(&rhs),
    })
}

/// Checks `x + T(x,z) = (1+x) A(x, z(1+x))` up to `z^order`, and, for every
/// `n ≤ min(order, cn_max)`, the coefficient form `T_n = (1+x)^(n+1) A_n`
/// against enumerated `C_n`, `C̃_n`. The polynomial form is checked first and
/// reported with `power = n`.
pub fn verify_t_from_a(order: usize, oracle: &Oracle) -> Result<GfVerdict, SeriesError> {
    check_order(order)?;
    let a = eulerian_polys(order);
    let one_plus_x = Poly::linear(1, 1);
    let check = "gf.t_from_a".to_string();

    let enumerated = order.min(oracle.limits.cn_max);
    for (n, a_n) in a.iter().enumerate().take(enumerated + 1).skip(1) {
        let (c, ct) = signed_eulerian(n, oracle)?;
        let t = t_poly_from(&c, &ct)?;
        let want = &one_plus_x.pow(n + 1) * a_n;
        if t != want {
            return Ok(GfVerdict {
                check,
                order,
                mismatch: Some(SeriesMismatch {
                    power: n,
                    lhs: t,
                    rhs: want,
                }),
            });
        }
    }

    let t = t_families(order, oracle)?;
    let t_series = TruncSeries::from_egf(order, |m| t[m].clone());
    let lhs = &TruncSeries::constant(Poly::x(), order) + &t_series;
    let rhs = TruncSeries::from_egf(order, |m| a[m].clone())
        .rescale_z(&one_plus_x)
        .scale(&one_plus_x);
    Ok(GfVerdict {
        check,
        order,
        mismatch: lhs.first_mismatch(&rhs),
    })
}

/// Checks `x(x^2-1) ∂P/∂x + (1 - x^2 z) ∂P/∂z = P + x` for the `z`-powers
/// `0..order`, with `P(x,z) = sum_{n ≤ order} R_n(x) z^n/n!`.
pub fn verify_pde(order: usize) -> Result<GfVerdict, SeriesError> {
    check_order(order)?;
    if order < 2 {
        return Err(SeriesError::OutOfDomain(format!(
            "PDE check needs order ≥ 2, got {order}"
        )));
    }
    let r = r_polys(order);
    let p = TruncSeries::from_egf(order, |m| r[m].clone());
    let pz = p.deriv_z();
    let x2 = Poly::monomial(crate::exact::rat(1), 2);
    let lhs = &(&p.deriv_x().scale(&Poly::from_ints(&[0, -1, 0, 1])) + &pz)
        - &pz.mul_z().scale(&x2);
    let rhs = &p + &TruncSeries::constant(Poly::x(), order);
    Ok(GfVerdict {
        check: "gf.pde".to_string(),
        order,
        mismatch: lhs.truncate(order - 1).first_mismatch(&rhs.truncate(order - 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle() -> Oracle {
        Oracle::default().with_jobs(1)
    }

    #[test]
    fn every_family_passes_at_order_8() {
        for f in GfFamily::ALL {
            let v = verify_gf(f, 8, &oracle()).unwrap();
            assert!(v.passed(), "{f}: {:?}", v.mismatch);
        }
    }

    #[test]
    fn zero_order_is_trivial() {
        assert!(verify_gf(GfFamily::A, 0, &oracle()).unwrap().passed());
    }

    #[test]
    fn parse_family_names() {
        assert_eq!("wl".parse::<GfFamily>().unwrap(), GfFamily::Wl);
        assert_eq!("CT".parse::<GfFamily>().unwrap(), GfFamily::Ct);
        assert_eq!(
            "Z".parse::<GfFamily>(),
            Err(SeriesError::UnknownFamily("Z".into()))
        );
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            verify_gf(GfFamily::A, MAX_GF_ORDER + 1, &oracle()),
            Err(SeriesError::OrderExceedsComputedFamilies { .. })
        ));
    }

    #[test]
    fn t_from_a_and_pde() {
        assert!(verify_t_from_a(6, &oracle()).unwrap().passed());
        assert!(verify_pde(8).unwrap().passed());
        assert!(verify_pde(1).is_err());
    }
}
