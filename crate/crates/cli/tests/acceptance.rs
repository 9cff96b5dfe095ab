//! Acceptance suite: every criterion at its stated tolerance, one PASS/FAIL
//! line each. Runs as a plain binary so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use peakpoly::exact::{rat, ratio, Poly};
use peakpoly::families::{
    bell_formula_r, cvijovic_reconstruct, derivative_polys, euler_numbers, r_polys, r_triangle,
    signed_eulerian, w_triangles, x0_reduction_check, x1_reduction_check,
};
use peakpoly::identities::{cleared_sum, interleave};
use peakpoly::oracle::{Oracle, PermStat};
use peakpoly::roots::{clt_closed_forms, clt_stats, interlacing_between, mode_check, verify_root_structure};
use peakpoly::series::{numeric_gf_spotcheck, verify_gf, verify_pde, verify_t_from_a, GfFamily};

const BIN: &str = env!("CARGO_BIN_EXE_peakpoly");

fn peakpoly(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn triangle_fidelity() -> Outcome {
    let start = Instant::now();
    let (out, code) = peakpoly(&["triangle", "--family", "R", "--nmax", "6", "--format", "csv"]);
    let t = within(start, Duration::from_secs(1))?;
    let want = "1\n1,1\n1,2,1\n1,4,5,2\n1,8,18,16,5\n1,16,58,88,61,16\n1,32,179,416,479,272,61\n";
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(out == want.as_bytes(), || format!("got {:?}", String::from_utf8_lossy(&out)))?;
    Ok(format!("rows 0..=6 byte-exact in {t:.2?}"))
}

fn triple_agreement() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    let tri = r_triangle(9);
    let r = r_polys(9);
    for (n, r_n) in r.iter().enumerate().skip(1) {
        let row = Poly::from_bigints(tri.row(n).unwrap());
        ensure(&row == r_n, || format!("n={n}: triangle {row} vs r_poly {r_n}"))?;
        let pk = oracle.distribution(n, PermStat::Pk).map_err(|e| e.to_string())?;
        let lpk = oracle.distribution(n, PermStat::Lpk).map_err(|e| e.to_string())?;
        let inter = Poly::from_bigints(&interleave(&pk.counts, &lpk.counts));
        ensure(&inter == r_n, || format!("n={n}: oracle interleaving {inter} vs {r_n}"))?;
    }
    let (w, wl) = w_triangles(7);
    let one_minus_x = Poly::linear(1, -1);
    for n in 1..=7 {
        let (c, ct) = signed_eulerian(n, &oracle).map_err(|e| e.to_string())?;
        let lhs_ct = cleared_sum(w.row(n).unwrap(), n - 1).shift(1).scale(&rat(2));
        let lhs_c = cleared_sum(wl.row(n).unwrap(), n);
        ensure(lhs_ct == ct, || format!("n={n}: C̃_n {lhs_ct} vs enumerated {ct}"))?;
        ensure(lhs_c == c, || format!("n={n}: C_n {lhs_c} vs enumerated {c}"))?;
        let mut rhs = one_minus_x.pow(n);
        for i in 1..=n {
            let a_i = oracle.distribution(i, PermStat::Des).map_err(|e| e.to_string())?.to_poly();
            let k = num_integer::binomial(BigInt::from(n), BigInt::from(i)) * (BigInt::from(1) << i);
            rhs += &(&one_minus_x.pow(n - i) * &a_i).shift(1).scale(&peakpoly::Rational::from_integer(k));
        }
        ensure(lhs_c == rhs, || format!("n={n}: left-peak side {lhs_c} vs descent side {rhs}"))?;
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!("n ≤ 9 triangle = recurrence = enumeration; n ≤ 7 signed identities, {t:.2?}"))
}

fn derivative_cross_check() -> Outcome {
    let (p, q) = derivative_polys(12);
    for n in 0..=12 {
        let (cp, cq) = cvijovic_reconstruct(n);
        ensure(cp == p[n] && cq == q[n], || format!("n={n}: reconstruction differs"))?;
    }
    let oracle = Oracle::default();
    let e = euler_numbers(10);
    for n in 1..=10 {
        let at0 = p[n].coeff(0) + q[n].coeff(0);
        let alt = oracle.count_alternating(n).map_err(|e| e.to_string())?;
        ensure(at0 == peakpoly::Rational::from_integer(alt.clone()), || {
            format!("n={n}: P_n(0) + Q_n(0) = {at0}, alternating count {alt}")
        })?;
        ensure(alt == e[n], || format!("n={n}: E_n = {}", e[n]))?;
    }
    let andre: Vec<BigInt> = [1, 1, 1, 2, 5, 16].map(BigInt::from).to_vec();
    ensure(e[..=5] == andre[..], || format!("E_0..E_5 = {:?}", &e[..=5]))?;
    ensure(p[0].coeff(0) + q[0].coeff(0) == rat(1), || "E_0".into())?;
    Ok("P_n, Q_n rebuilt for n ≤ 12; E_n matches enumeration for n ≤ 10".into())
}

fn gf_suite() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    for f in GfFamily::ALL {
        let v = verify_gf(f, 16, &oracle).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{}: {:?}", v.check, v.mismatch))?;
    }
    let pde = verify_pde(16).map_err(|e| e.to_string())?;
    ensure(pde.passed(), || format!("pde: {:?}", pde.mismatch))?;
    let t_from_a = verify_t_from_a(16, &oracle).map_err(|e| e.to_string())?;
    ensure(t_from_a.passed(), || format!("t_from_a: {:?}", t_from_a.mismatch))?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("8 generating functions to z^16, PDE to z^15, T/A relation, {t:.2?}"))
}

fn bell_formula() -> Outcome {
    let r = r_polys(13);
    for n in 1..=12 {
        let b = bell_formula_r(n);
        ensure(b == r[n + 1], || format!("n={n}: {b} vs {}", r[n + 1]))?;
        ensure(x0_reduction_check(n), || format!("n={n}: x=0 reduction"))?;
        ensure(x1_reduction_check(n), || format!("n={n}: x=1 reduction"))?;
    }
    let ex = bell_formula_r(4);
    ensure(ex == Poly::from_ints(&[1, 16, 58, 88, 61, 16]), || format!("n=4 gives {ex}"))?;
    Ok("n ≤ 12 with both reductions; n = 4 gives 1 + 16x + 58x^2 + 88x^3 + 61x^4 + 16x^5".into())
}

fn root_certification() -> Outcome {
    let start = Instant::now();
    let mut prev = verify_root_structure(1).map_err(|e| e.to_string())?;
    for n in 1..=25 {
        let r = &prev;
        ensure(r.mult_minus1 == n / 2 + 1, || format!("n={n}: multiplicity {}", r.mult_minus1))?;
        ensure(r.isolating_intervals.len() == n.div_ceil(2) - 1, || format!("n={n}: zero count"))?;
        ensure(r.g.integer_coeffs().is_some_and(|c| c.iter().all(|c| c > &BigInt::from(0))), || {
            format!("n={n}: G_n not positive integral")
        })?;
        let next = verify_root_structure(n + 1).map_err(|e| e.to_string())?;
        interlacing_between(n, &prev, &next).map_err(|e| e.to_string())?;
        prev = next;
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("zero structure and R_n sep R_(n+1) for n ≤ 25, {t:.2?}"))
}

fn clt_statistics() -> Outcome {
    for n in 4..=30 {
        let s = clt_stats(n);
        clt_closed_forms(&s).map_err(|m| format!("n={n}: {} = {} expected {}", m.quantity, m.got, m.want))?;
        ensure(s.mu == ratio(2 * n as i64 - 1, 3), || format!("n={n}: mu"))?;
        ensure(s.sigma2 == ratio(8 * n as i64 + 8, 45), || format!("n={n}: sigma2"))?;
    }
    Ok("mean, variance and R_n(1), R_n'(1), R_n''(1) exact for 4 ≤ n ≤ 30".into())
}

fn mode_bracket() -> Outcome {
    for n in 2..=25 {
        let m = mode_check(n);
        ensure(m.in_bracket, || format!("n={n}: argmax {:?} vs {}", m.argmax, m.target))?;
    }
    for (n, max) in [(2, 2), (5, 88), (6, 479)] {
        let m = mode_check(n);
        ensure(m.max == BigInt::from(max), || format!("n={n}: max {}", m.max))?;
    }
    Ok("argmax in the bracket for 2 ≤ n ≤ 25; maxima 2, 88, 479".into())
}

fn numeric_spotcheck() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (x0, t0, order) in [(ratio(1, 2), ratio(1, 20), 20), (ratio(7, 10), ratio(1, 10), 24)] {
        let r = numeric_gf_spotcheck(&x0, &t0, order, 1e-12).map_err(|e| e.to_string())?;
        notes.push(format!("({x0}, {t0}): rel {:.1e}, tail ≤ {:.1e}", r.rel_diff, r.remainder_bound));
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{}; {t:.2?}", notes.join("; ")))
}

fn determinism() -> Outcome {
    let (a, ca) = peakpoly(&["verify", "--suite", "all", "--jobs", "1"]);
    let (b, cb) = peakpoly(&["verify", "--suite", "all", "--jobs", "1"]);
    let (c, cc) = peakpoly(&["verify", "--suite", "all", "--jobs", "8"]);
    ensure(ca == 0 && cb == 0 && cc == 0, || format!("exit codes {ca}, {cb}, {cc}"))?;
    ensure(a == b, || "two runs with --jobs 1 differ".into())?;
    ensure(a == c, || "--jobs 1 and --jobs 8 differ".into())?;
    Ok(format!("three runs byte-identical ({} bytes)", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 triangle fidelity", triangle_fidelity),
        ("2 triple agreement", triple_agreement),
        ("3 derivative-polynomial cross-check", derivative_cross_check),
        ("4 generating-function suite", gf_suite),
        ("5 Bell formula", bell_formula),
        ("6 root certification", root_certification),
        ("7 CLT statistics", clt_statistics),
        ("8 mode bracket", mode_bracket),
        ("9 numeric spot-check", numeric_spotcheck),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
