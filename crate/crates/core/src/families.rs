//! The polynomial families and number triangles, each computed from its
//! recurrence or defining series in exact arithmetic.
//!
//! | family | meaning |
//! |---|---|
//! | `R_n(x)` | coefficients of `D^n(tan + sec)` in the basis `tan^(n-k) sec^(k+1)` |
//! | `W_n(x)` | interior-peak polynomial of `S_n` |
//! | `W^l_n(x)` | left-peak polynomial of `S_n` |
//! | `P_n(u)`, `Q_n(u)` | derivative polynomials of tangent and secant |
//! | `A_n(x)` | Eulerian polynomial |
//! | `C_n(x)`, `C̃_n(x)` | type-B and affine Eulerian polynomials |
//! | `T_n(x)` | `C_n(x^2) + C̃_n(x^2)/x` |
//! | `G_n(x)` | `R_n(x) / (1+x)^(⌊n/2⌋+1)` |

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rat, Poly, PolyError, Rational};
use crate::oracle::{Oracle, OracleError, SignedStat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("partial Bell polynomial needs {needed} arguments, got {got}")]
    InsufficientArguments { needed: usize, got: usize },
    #[error("C̃_n has a nonzero constant term, so T_n is not a polynomial")]
    ConstantTermNonzero,
    #[error("exact division left a nonzero remainder")]
    NonzeroRemainder,
    #[error("coefficient {index} is not a positive integer")]
    NonpositiveCoefficient { index: usize },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Poly(PolyError),
}

impl From<PolyError> for FamilyError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NonzeroRemainder => FamilyError::NonzeroRemainder,
            other => FamilyError::Poly(other),
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleFamily {
    R,
    W,
    Wl,
}

/// Rows of integer coefficients; `rows[i]` is row `first_row + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTriangle {
    pub family: TriangleFamily,
    pub first_row: usize,
    pub rows: Vec<Vec<BigInt>>,
}

impl CoeffTriangle {
    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        n.checked_sub(self.first_row)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    pub fn row_poly(&self, n: usize) -> Option<Poly> {
        self.row(n).map(Poly::from_bigints)
    }

    pub fn last_row(&self) -> Option<usize> {
        (!self.rows.is_empty()).then(|| self.first_row + self.rows.len() - 1)
    }

    /// Test hook: add `delta` to entry `(n, k)`.
    #[doc(hidden)]
    pub fn perturb(&mut self, n: usize, k: usize, delta: i64) {
        if let Some(i) = n.checked_sub(self.first_row) {
            if let Some(e) = self.rows.get_mut(i).and_then(|r| r.get_mut(k)) {
                *e += delta;
            }
        }
    }
}

fn entry(row: &[BigInt], k: isize) -> BigInt {
    usize::try_from(k)
        .ok()
        .and_then(|k| row.get(k))
        .cloned()
        .unwrap_or_default()
}

/// Rows `0..=nmax` of `R_{n,k}`, from
/// `R_{n+1,k} = (k+1) R_{n,k} + (n-k+2) R_{n,k-2}` seeded with `R_0 = [1]`,
/// `R_1 = [1, 1]`.
pub fn r_triangle(nmax: usize) -> CoeffTriangle {
    let mut rows = vec![vec![BigInt::one()]];
    if nmax >= 1 {
        rows.push(vec![BigInt::one(), BigInt::one()]);
    }
    for n in 1..nmax {
        let prev = &rows[n];
        let next: Vec<BigInt> = (0..=n + 1)
            .map(|k| {
                let k = k as isize;
                entry(prev, k) * (k + 1) + entry(prev, k - 2) * (n as isize - k + 2)
            })
            .collect();
        rows.push(next);
    }
    CoeffTriangle {
        family: TriangleFamily::R,
        first_row: 0,
        rows,
    }
}

/// Interior-peak and left-peak triangles, rows `1..=nmax`:
/// `W_{n,k} = (2k+2) W_{n-1,k} + (n-2k) W_{n-1,k-1}` and
/// `W^l_{n,k} = (2k+1) W^l_{n-1,k} + (n-2k+1) W^l_{n-1,k-1}`.
pub fn w_triangles(nmax: usize) -> (CoeffTriangle, CoeffTriangle) {
    let mut w: Vec<Vec<BigInt>> = Vec::new();
    let mut wl: Vec<Vec<BigInt>> = Vec::new();
    if nmax >= 1 {
        w.push(vec![BigInt::one()]);
        wl.push(vec![BigInt::one()]);
    }
    for n in 2..=nmax {
        let (pw, pwl) = (&w[n - 2], &wl[n - 2]);
        let n_i = n as isize;
        let rw: Vec<BigInt> = (0..=(n - 1) / 2)
            .map(|k| {
                let k = k as isize;
                entry(pw, k) * (2 * k + 2) + entry(pw, k - 1) * (n_i - 2 * k)
            })
            .collect();
        let rwl: Vec<BigInt> = (0..=n / 2)
            .map(|k| {
                let k = k as isize;
                entry(pwl, k) * (2 * k + 1) + entry(pwl, k - 1) * (n_i - 2 * k + 1)
            })
            .collect();
        w.push(rw);
        wl.push(rwl);
    }
    (
        CoeffTriangle {
            family: TriangleFamily::W,
            first_row: 1,
            rows: w,
        },
        CoeffTriangle {
            family: TriangleFamily::Wl,
            first_row: 1,
            rows: wl,
        },
    )
}

/// `W_n` and `W^l_n` for `n = 0..=nmax` from the polynomial recurrences
/// `W_{n+1} = (nx - x + 2) W_n + 2x(1-x) W_n'` and
/// `W^l_{n+1} = (nx + 1) W^l_n + 2x(1-x) W^l_n'`.
///
/// Index 0 holds the constant terms of the exponential generating
/// functions: `0` for `W`, `1` for `W^l`.
pub fn w_polys_by_recurrence(nmax: usize) -> (Vec<Poly>, Vec<Poly>) {
    let mut w = vec![Poly::zero()];
    let mut wl = vec![Poly::one()];
    if nmax == 0 {
        return (w, wl);
    }
    w.push(Poly::one());
    wl.push(Poly::one());
    let two_x_one_minus_x = Poly::from_ints(&[0, 2, -2]);
    for n in 1..nmax {
        let ni = n as i64;
        let a = &w[n];
        let next = &(a * &Poly::linear(2, ni - 1)) + &(&two_x_one_minus_x * &a.derivative());
        let b = &wl[n];
        let next_l = &(b * &Poly::linear(1, ni)) + &(&two_x_one_minus_x * &b.derivative());
        w.push(next);
        wl.push(next_l);
    }
    (w, wl)
}

/// `R_0, …, R_nmax` from `R_{n+1} = (1 + n x^2) R_n + x(1 - x^2) R_n'`,
/// starting at `R_1 = 1 + x`.
pub fn r_polys(nmax: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    if nmax == 0 {
        return out;
    }
    out.push(Poly::linear(1, 1));
    let x_one_minus_x2 = Poly::from_ints(&[0, 1, 0, -1]);
    for n in 1..nmax {
        let r = &out[n];
        let next = &(r * &Poly::from_ints(&[1, 0, n as i64])) + &(&x_one_minus_x2 * &r.derivative());
        out.push(next);
    }
    out
}

pub fn r_poly(n: usize) -> Poly {
    r_polys(n).pop().expect("nonempty")
}

/// `P_0..=P_nmax` and `Q_0..=Q_nmax`: `P_0 = u`, `P_{n+1} = (1+u^2) P_n'`;
/// `Q_0 = 1`, `Q_{n+1} = (1+u^2) Q_n' + u Q_n`.
pub fn derivative_polys(nmax: usize) -> (Vec<Poly>, Vec<Poly>) {
    let one_plus_u2 = Poly::from_ints(&[1, 0, 1]);
    let mut p = vec![Poly::x()];
    let mut q = vec![Poly::one()];
    for n in 0..nmax {
        p.push(&one_plus_u2 * &p[n].derivative());
        q.push(&(&one_plus_u2 * &q[n].derivative()) + &q[n].shift(1));
    }
    (p, q)
}

/// Euler numbers `E_0..=E_nmax`, read off as `P_n(0)` for odd `n` and
/// `Q_n(0)` for even `n`.
pub fn euler_numbers(nmax: usize) -> Vec<BigInt> {
    let (p, q) = derivative_polys(nmax);
    (0..=nmax)
        .map(|n| {
            let v = if n % 2 == 1 { p[n].coeff(0) } else { q[n].coeff(0) };
            v.to_integer()
        })
        .collect()
}

/// `A_0 = 1, A_1, …, A_nmax` via `A_{n+1} = (1 + n x) A_n + x(1-x) A_n'`.
pub fn eulerian_polys(nmax: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    if nmax == 0 {
        return out;
    }
    out.push(Poly::one());
    let x_one_minus_x = Poly::from_ints(&[0, 1, -1]);
    for n in 1..nmax {
        let a = &out[n];
        let next = &(a * &Poly::linear(1, n as i64)) + &(&x_one_minus_x * &a.derivative());
        out.push(next);
    }
    out
}

pub fn eulerian(n: usize) -> Poly {
    eulerian_polys(n).pop().expect("nonempty")
}

/// `(C_n, C̃_n)` by enumerating the signed permutations of `±[n]`.
pub fn signed_eulerian(n: usize, oracle: &Oracle) -> Result<(Poly, Poly), FamilyError> {
    let c = oracle.signed_distribution(n, SignedStat::DesB)?.to_poly();
    let ct = oracle.signed_distribution(n, SignedStat::Ades)?.to_poly();
    Ok((c, ct))
}

/// `den^clear * W(4x/(1+x)^2)` for a peak polynomial with `den = (1+x)^2`.
pub fn peak_cleared(p: &Poly, clear: usize) -> Result<Poly, PolyError> {
    p.subst_cleared(&Poly::from_ints(&[0, 4]), &Poly::from_ints(&[1, 2, 1]), clear)
}

/// `(1+x)^e * W(4x/(1+x)^2)` for any `e ≥ 2·deg W`; the odd part of the
/// exponent multiplies the cleared form by a plain `(1+x)` power.
pub fn peak_substituted(p: &Poly, e: usize) -> Result<Poly, PolyError> {
    let cleared = peak_cleared(p, e / 2)?;
    Ok(&cleared * &Poly::linear(1, 1).pow(e % 2))
}

/// `(C_n, C̃_n)` for any `n ≥ 1` from the peak polynomials:
/// `C_n = (1+x)^n W^l_n(4x/(1+x)^2)` and
/// `C̃_n = 2x (1+x)^(n-1) W_n(4x/(1+x)^2)`.
pub fn signed_eulerian_from_peaks(n: usize) -> Result<(Poly, Poly), FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidRange("n must be at least 1".into()));
    }
    let (w, wl) = w_triangles(n);
    let c = peak_substituted(&wl.row_poly(n).expect("row"), n)?;
    let ct = peak_substituted(&w.row_poly(n).expect("row"), n - 1)?.shift(1).scale(&rat(2));
    Ok((c, ct))
}

/// `T_n(x) = C_n(x^2) + C̃_n(x^2) / x`.
pub fn t_poly_from(c: &Poly, ct: &Poly) -> Result<Poly, FamilyError> {
    if !ct.coeff(0).is_zero() {
        return Err(FamilyError::ConstantTermNonzero);
    }
    let ct2 = ct.subst_square();
    let over_x = Poly::from_coeffs(ct2.coeffs().iter().skip(1).cloned().collect());
    Ok(&c.subst_square() + &over_x)
}

/// `T_n` from enumerated `C_n`, `C̃_n`.
pub fn t_poly(n: usize, oracle: &Oracle) -> Result<Poly, FamilyError> {
    let (c, ct) = signed_eulerian(n, oracle)?;
    t_poly_from(&c, &ct)
}

fn scalar_mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Tangent numbers of order `k`, `T(n,k) = n! [x^n] tan^k x`, and secant
/// numbers of order `k`, `n! [x^n] sec x tan^k x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTables {
    /// `tangent[n][k]`.
    pub tangent: Vec<Vec<BigInt>>,
    /// `secant[n][k]`.
    pub secant: Vec<Vec<BigInt>>,
}

impl OrderTables {
    pub fn tangent_order(&self, n: usize, k: usize) -> BigInt {
        self.tangent[n][k].clone()
    }

    pub fn secant_order(&self, n: usize, k: usize) -> BigInt {
        self.secant[n][k].clone()
    }
}

/// Both order-`k` tables for `n ≤ nmax`, `k ≤ kmax`, from exact truncated
/// powers of the tangent and secant series, whose coefficients are taken
/// from `P_n(0)` and `Q_n(0)`.
pub fn tangent_secant_orders(nmax: usize, kmax: usize) -> Result<OrderTables, FamilyError> {
    if kmax > nmax {
        return Err(FamilyError::InvalidRange(format!(
            "kmax = {kmax} exceeds nmax = {nmax}"
        )));
    }
    let len = nmax + 1;
    let (p, q) = derivative_polys(nmax);
    let fact: Vec<BigInt> = (0..=nmax).map(factorial).collect();
    let tan: Vec<Rational> = (0..len)
        .map(|n| p[n].coeff(0) / Rational::from_integer(fact[n].clone()))
        .collect();
    let sec: Vec<Rational> = (0..len)
        .map(|n| q[n].coeff(0) / Rational::from_integer(fact[n].clone()))
        .collect();

    let mut tangent = vec![Vec::with_capacity(kmax + 1); len];
    let mut secant = vec![Vec::with_capacity(kmax + 1); len];
    let mut tan_pow = {
        let mut one = vec![Rational::zero(); len];
        one[0] = Rational::one();
        one
    };
    for _k in 0..=kmax {
        let sec_tan = scalar_mul_trunc(&sec, &tan_pow, len);
        for n in 0..len {
            let scale = Rational::from_integer(fact[n].clone());
            tangent[n].push((&tan_pow[n] * &scale).to_integer());
            secant[n].push((&sec_tan[n] * &scale).to_integer());
        }
        tan_pow = scalar_mul_trunc(&tan_pow, &tan, len);
    }
    Ok(OrderTables { tangent, secant })
}

/// `P_n` and `Q_n` rebuilt from the order-`k` tables:
/// `P_n(x) = T(n,1) + sum_{k=1}^{n+1} T(n+1,k) x^k / k` and
/// `Q_n(x) = sum_{k=0}^{n} S(n,k) x^k` (`S` the secant numbers of order `k`).
pub fn cvijovic_reconstruct(n: usize) -> (Poly, Poly) {
    let tables = tangent_secant_orders(n + 1, n + 1).expect("kmax = nmax");
    let mut p = vec![Rational::from_integer(tables.tangent_order(n, 1))];
    for k in 1..=n + 1 {
        p.push(Rational::new(tables.tangent_order(n + 1, k), BigInt::from(k)));
    }
    let q = (0..=n)
        .map(|k| Rational::from_integer(tables.secant_order(n, k)))
        .collect();
    (Poly::from_coeffs(p), Poly::from_coeffs(q))
}

/// All partial Bell polynomials `B_{n,k}` with `n ≤ nmax`, evaluated at the
/// arguments `xs[0] = x_1, xs[1] = x_2, …`.
#[derive(Debug, Clone)]
pub struct BellTable {
    table: Vec<Vec<Poly>>,
}

impl BellTable {
    /// Fills the table with
    /// `B_{n,k} = sum_{i ≥ 1} C(n-1, i-1) x_i B_{n-i,k-1}`.
    pub fn new(nmax: usize, xs: &[Poly]) -> Result<Self, FamilyError> {
        if nmax >= 1 && xs.len() < nmax {
            return Err(FamilyError::InsufficientArguments {
                needed: nmax,
                got: xs.len(),
            });
        }
        let mut table: Vec<Vec<Poly>> = vec![vec![Poly::zero(); nmax + 1]; nmax + 1];
        table[0][0] = Poly::one();
        for n in 1..=nmax {
            for k in 1..=n {
                let mut acc = Poly::zero();
                for i in 1..=n - k + 1 {
                    let prev = &table[n - i][k - 1];
                    if prev.is_zero() {
                        continue;
                    }
                    let c = Rational::from_integer(binomial(BigInt::from(n - 1), BigInt::from(i - 1)));
                    acc += &(&xs[i - 1] * prev).scale(&c);
                }
                table[n][k] = acc;
            }
        }
        Ok(BellTable { table })
    }

    pub fn get(&self, n: usize, k: usize) -> &Poly {
        &self.table[n][k]
    }
}

/// `B_{n,k}(x_1, …, x_{n-k+1})`.
pub fn bell_partial(n: usize, k: usize, xs: &[Poly]) -> Result<Poly, FamilyError> {
    if k > n {
        return Ok(Poly::zero());
    }
    let needed = if k == 0 { 0 } else { n - k + 1 };
    if xs.len() < needed {
        return Err(FamilyError::InsufficientArguments {
            needed,
            got: xs.len(),
        });
    }
    let mut padded = xs[..needed.min(xs.len())].to_vec();
    padded.resize(n, Poly::zero());
    Ok(BellTable::new(n, &padded)?.get(n, k).clone())
}

/// Stirling numbers of the second kind, as `B_{n,k}(1, 1, 1, …)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let ones = vec![Poly::one(); n];
    bell_partial(n, k, &ones)
        .expect("enough arguments")
        .coeff(0)
        .to_integer()
}

/// The arguments `x_i = (1 - x^2)^⌊(i-1)/2⌋`, `i = 1..=n`.
pub fn bell_r_arguments(n: usize) -> Vec<Poly> {
    let base = Poly::from_ints(&[1, 0, -1]);
    (1..=n).map(|i| base.pow((i - 1) / 2)).collect()
}

/// `R_{n+1}(x) = sum_{k=1}^{n} (-1)^(n-k) k! (1+x)^(k+1) B_{n,k}` with
/// `x_i = (1 - x^2)^⌊(i-1)/2⌋`.
pub fn bell_formula_r(n: usize) -> Poly {
    let table = BellTable::new(n, &bell_r_arguments(n)).expect("n arguments");
    let one_plus_x = Poly::linear(1, 1);
    let mut out = Poly::zero();
    for k in 1..=n {
        let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
        let c = Rational::from_integer(factorial(k) * sign);
        out += &(&one_plus_x.pow(k + 1) * table.get(n, k)).scale(&c);
    }
    out
}

/// `sum_{k=0}^{n} (-1)^(n-k) k! S(n,k) = 1`.
pub fn x0_reduction_check(n: usize) -> bool {
    let sum: BigInt = (0..=n)
        .map(|k| {
            let t = factorial(k) * stirling2(n, k);
            if (n - k).is_multiple_of(2) {
                t
            } else {
                -t
            }
        })
        .sum();
    sum.is_one()
}

/// `(n+1)! = sum_{k=1}^{n} (-1)^(n-k) k! 2^k B_{n,k}(1, 1, 0, 0, …)`.
pub fn x1_reduction_check(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut xs = vec![Poly::zero(); n];
    xs[0] = Poly::one();
    if n >= 2 {
        xs[1] = Poly::one();
    }
    let table = BellTable::new(n, &xs).expect("n arguments");
    let sum: BigInt = (1..=n)
        .map(|k| {
            let t = factorial(k) * (BigInt::one() << k) * table.get(n, k).coeff(0).to_integer();
            if (n - k).is_multiple_of(2) {
                t
            } else {
                -t
            }
        })
        .sum();
    sum == factorial(n + 1)
}

/// Multiplicity of the zero at `-1` that `R_n` is claimed to carry.
pub fn minus_one_multiplicity(n: usize) -> usize {
    n / 2 + 1
}

/// `G_n = R_n / (1+x)^(⌊n/2⌋+1)`, required to have positive integer
/// coefficients.
pub fn g_poly(n: usize) -> Result<Poly, FamilyError> {
    g_from_r(n, &r_poly(n))
}

pub fn g_from_r(n: usize, r: &Poly) -> Result<Poly, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidRange("n must be at least 1".into()));
    }
    let g = r.exact_div(&Poly::linear(1, 1).pow(minus_one_multiplicity(n)))?;
    if let Some(index) = g
        .coeffs()
        .iter()
        .position(|c| !c.is_integer() || !c.is_positive())
    {
        return Err(FamilyError::NonpositiveCoefficient { index });
    }
    Ok(g)
}
