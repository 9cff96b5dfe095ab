//! `peakpoly`: triangles, polynomials, brute-force distributions and the
//! verification suites from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 limit
//! exceeded.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use peakpoly::families::{
    derivative_polys, eulerian, g_poly, r_poly, r_triangle, signed_eulerian, t_poly_from, w_triangles,
    CoeffTriangle,
};
use peakpoly::identities::{ConfigError, ReportDocument, Suite, SuiteConfig, SuiteKind, Verdict};
use peakpoly::oracle::{Oracle, OracleError, OracleLimits, PermStat, SignedStat};
use peakpoly::series::{signed_eulerian_from_gf, MAX_GF_ORDER};
use peakpoly::Poly;

/// Largest row or index served by `triangle` and `poly`.
const INDEX_CAP: usize = 200;

#[derive(Parser)]
#[command(name = "peakpoly", version, about = "Peak polynomials, derivative polynomials and their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows of the R, W or W^l triangle.
    Triangle {
        #[arg(long, value_enum)]
        family: TriFamily,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the coefficients of one polynomial, ascending by degree.
    Poly {
        #[arg(long, value_enum)]
        family: PolyFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Upper index for the selected suite (not accepted with `all`).
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 12)]
        nmax_exact: usize,
        #[arg(long, default_value_t = 9)]
        nmax_oracle: usize,
        /// Largest n for enumerated signed permutations.
        #[arg(long, default_value_t = 7)]
        cn: usize,
        #[arg(long, default_value_t = 16)]
        gf_order: usize,
        #[arg(long, default_value_t = 25)]
        roots_nmax: usize,
        #[arg(long, default_value_t = 30)]
        clt_nmax: usize,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a brute-force distribution as CSV.
    Oracle {
        #[arg(long, value_enum)]
        stat: StatArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Caps {
    /// Enumeration cap for permutations of 1..=n.
    #[arg(long, default_value_t = 10)]
    sn_cap: usize,
    /// Enumeration cap for signed permutations of 1..=n.
    #[arg(long, default_value_t = 7)]
    cn_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TriFamily {
    #[value(name = "R")]
    R,
    #[value(name = "W")]
    W,
    #[value(name = "WL")]
    Wl,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFamily {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "A")]
    A,
    #[value(name = "R")]
    R,
    #[value(name = "G")]
    G,
    #[value(name = "T")]
    T,
    #[value(name = "C")]
    C,
    #[value(name = "CT")]
    Ct,
    #[value(name = "W")]
    W,
    #[value(name = "WL")]
    Wl,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Identities,
    Gf,
    Roots,
    Clt,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    Pk,
    Lpk,
    Des,
    Desb,
    Ades,
    Alt,
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            ConfigError::InvalidRange(_) => Failure::Usage(e.to_string()),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn limit<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Limit(msg.into()))
}

/// `--jobs` if given, else `PEAKPOLY_JOBS`, else the machine's parallelism.
fn resolve_jobs(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(j) = flag {
        return if j == 0 { usage("--jobs must be at least 1") } else { Ok(j) };
    }
    match std::env::var("PEAKPOLY_JOBS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(j) if j > 0 => Ok(j),
            _ => usage(format!("PEAKPOLY_JOBS must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn render_rows(rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => rows.iter().map(|r| r.join(",") + "\n").collect(),
        Format::Json => serde_json::to_string(rows).expect("strings serialize") + "\n",
    }
}

fn triangle_rows(t: &CoeffTriangle) -> Vec<Vec<String>> {
    t.rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn cmd_triangle(family: TriFamily, nmax: usize, format: Format) -> Result<String, Failure> {
    if nmax > INDEX_CAP {
        return limit(format!("nmax = {nmax} exceeds the limit {INDEX_CAP}"));
    }
    let t = match family {
        TriFamily::R => r_triangle(nmax),
        TriFamily::W | TriFamily::Wl => {
            if nmax == 0 {
                return usage("peak triangles start at row 1");
            }
            let (w, wl) = w_triangles(nmax);
            if matches!(family, TriFamily::W) {
                w
            } else {
                wl
            }
        }
    };
    Ok(render_rows(&triangle_rows(&t), format))
}

/// `(C_n, C̃_n)`: enumerated up to the cap, from generating functions past it.
fn signed_pair(n: usize, caps: Caps) -> Result<(Poly, Poly), Failure> {
    if n <= caps.cn_cap {
        let oracle = Oracle::new(OracleLimits {
            sn_max: caps.sn_cap,
            cn_max: caps.cn_cap,
        });
        return signed_eulerian(n, &oracle).map_err(|e| Failure::Usage(e.to_string()));
    }
    if n > MAX_GF_ORDER {
        return limit(format!("n = {n} exceeds the generating-function limit {MAX_GF_ORDER}"));
    }
    let (c, ct) = signed_eulerian_from_gf(n).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((c[n].clone(), ct[n].clone()))
}

fn cmd_poly(family: PolyFamily, n: usize, format: Format, caps: Caps) -> Result<String, Failure> {
    use PolyFamily::*;
    if n > INDEX_CAP {
        return limit(format!("n = {n} exceeds the limit {INDEX_CAP}"));
    }
    let needs_positive = matches!(family, G | T | C | Ct | W | Wl);
    if needs_positive && n == 0 {
        return usage("this family starts at n = 1");
    }
    let p = match family {
        P => derivative_polys(n).0.swap_remove(n),
        Q => derivative_polys(n).1.swap_remove(n),
        A => eulerian(n),
        R => r_poly(n),
        G => g_poly(n).map_err(|e| Failure::Usage(e.to_string()))?,
        W => w_triangles(n).0.row_poly(n).expect("row n"),
        Wl => w_triangles(n).1.row_poly(n).expect("row n"),
        C => signed_pair(n, caps)?.0,
        Ct => signed_pair(n, caps)?.1,
        T => {
            let (c, ct) = signed_pair(n, caps)?;
            t_poly_from(&c, &ct).map_err(|e| Failure::Usage(e.to_string()))?
        }
    };
    Ok(match format {
        Format::Csv => p.to_csv() + "\n",
        Format::Json => {
            let coeffs: Vec<String> = if p.is_zero() {
                vec!["0".to_string()]
            } else {
                p.coeffs().iter().map(ToString::to_string).collect()
            };
            serde_json::to_string(&coeffs).expect("strings serialize") + "\n"
        }
    })
}

fn cmd_oracle(stat: StatArg, n: usize, jobs: Option<usize>, caps: Caps) -> Result<String, Failure> {
    if n == 0 {
        return usage("n must be at least 1");
    }
    let oracle = Oracle::new(OracleLimits {
        sn_max: caps.sn_cap,
        cn_max: caps.cn_cap,
    })
    .with_jobs(resolve_jobs(jobs)?);
    let counts = match stat {
        StatArg::Pk => oracle.distribution(n, PermStat::Pk)?.counts,
        StatArg::Lpk => oracle.distribution(n, PermStat::Lpk)?.counts,
        StatArg::Des => oracle.distribution(n, PermStat::Des)?.counts,
        StatArg::Desb => oracle.signed_distribution(n, SignedStat::DesB)?.counts,
        StatArg::Ades => oracle.signed_distribution(n, SignedStat::Ades)?.counts,
        StatArg::Alt => vec![oracle.count_alternating(n)?],
    };
    let row: Vec<String> = counts.iter().map(ToString::to_string).collect();
    Ok(row.join(",") + "\n")
}

fn cmd_verify(
    suite: SuiteArg,
    nmax: Option<usize>,
    mut config: SuiteConfig,
    jobs: Option<usize>,
) -> Result<(String, Verdict), Failure> {
    let kind = match suite {
        SuiteArg::All => SuiteKind::All,
        SuiteArg::Identities => SuiteKind::Identities,
        SuiteArg::Gf => SuiteKind::Gf,
        SuiteArg::Roots => SuiteKind::Roots,
        SuiteArg::Clt => SuiteKind::Clt,
        SuiteArg::Oracle => SuiteKind::Oracle,
    };
    if let Some(n) = nmax {
        match kind {
            SuiteKind::All => return usage("--nmax needs a single suite; use the per-suite flags with `all`"),
            SuiteKind::Identities => config.nmax_exact = n,
            SuiteKind::Gf => config.gf_order = n,
            SuiteKind::Roots => config.roots_nmax = n,
            SuiteKind::Clt => config.clt_nmax = n,
            SuiteKind::Oracle => config.nmax_oracle = n,
        }
    }
    config.jobs = resolve_jobs(jobs)?;
    let results = Suite::new(config).run(kind)?;
    let doc = ReportDocument::new(env!("CARGO_PKG_VERSION"), kind, config, results);
    let verdict = doc.aggregate;
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    Ok((text, verdict))
}

fn run(cli: Cli) -> Result<(String, Verdict), Failure> {
    match cli.command {
        Command::Triangle { family, nmax, format } => Ok((cmd_triangle(family, nmax, format)?, Verdict::Pass)),
        Command::Poly { family, n, format, caps } => Ok((cmd_poly(family, n, format, caps)?, Verdict::Pass)),
        Command::Oracle { stat, n, jobs, caps } => Ok((cmd_oracle(stat, n, jobs, caps)?, Verdict::Pass)),
        Command::Verify {
            suite,
            nmax,
            nmax_exact,
            nmax_oracle,
            cn,
            gf_order,
            roots_nmax,
            clt_nmax,
            caps,
            jobs,
        } => {
            let config = SuiteConfig {
                nmax_exact,
                nmax_oracle,
                cn,
                gf_order,
                roots_nmax,
                clt_nmax,
                sn_cap: caps.sn_cap,
                cn_cap: caps.cn_cap,
                jobs: 1,
            };
            cmd_verify(suite, nmax, config, jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, verdict)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if verdict == Verdict::Pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: limit exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
