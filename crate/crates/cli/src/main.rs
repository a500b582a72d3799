//! `sl2h`: tabulate matrix elements and Losert functions, run the verification suites,
//! compute Plancherel transforms, Kac-Moody brackets and Clebsch-Gordan expansions.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2_harmonic::reps::RepLabel;
use sl2_harmonic::{Error, HalfInt};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "sl2h", version, about = "Harmonic analysis on SL(2,R) and its Kac-Moody algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    params: Params,
}

/// Numeric parameters and output options, accepted by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Largest discrete-series λ kept.
    #[arg(long, global = true, default_value = "2", value_parser = parse_half)]
    pub lambda_max: HalfInt,
    /// Upper end of the σ grid.
    #[arg(long, global = true, default_value_t = 14.0, value_parser = positive)]
    pub sigma_max: f64,
    /// Gauss-Legendre nodes per unit σ panel.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub quad_order: u64,
    /// Radial cut-off for round-trip norms.
    #[arg(long, global = true, default_value_t = 1e4, value_parser = positive)]
    pub x_max: f64,
    /// Largest Losert k (command dependent default).
    #[arg(long, global = true)]
    pub k_max: Option<u32>,
    /// L0-grade range, `a..b` in half-integers.
    #[arg(long, global = true, default_value = "-2..2", value_parser = parse_range, allow_hyphen_values = true)]
    pub n_range: GradeRange,
    /// R0-grade range, `a..b` in half-integers.
    #[arg(long, global = true, default_value = "-2..2", value_parser = parse_range, allow_hyphen_values = true)]
    pub m_range: GradeRange,
    /// Tolerance for the checks (command dependent default).
    #[arg(long, global = true, value_parser = positive)]
    pub tol: Option<f64>,
    /// Left central charge.
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    pub kl: f64,
    /// Right central charge.
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    pub kr: f64,
    /// Representation label, `discrete:<λ>:<+|->` or `continuous:<σ>[:<ε>]`.
    #[arg(long, global = true, value_parser = parse_rep)]
    pub rep: Option<RepLabel>,
    /// Number of random sample points.
    #[arg(long, global = true, default_value_t = 20)]
    pub points: usize,
    #[arg(long, global = true, default_value_t = 20240601)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Inclusive range of half-integer grades, stepped by 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeRange {
    pub lo: HalfInt,
    pub hi: HalfInt,
}

impl GradeRange {
    pub fn values(&self) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut v = self.lo;
        while v <= self.hi {
            out.push(v);
            v = v + HalfInt::ONE;
        }
        out
    }

    pub fn max_abs(&self) -> HalfInt {
        self.lo.abs().max(self.hi.abs())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Values at seeded sample points.
    Tabulate {
        #[arg(value_enum)]
        what: TabulateWhat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Plancherel transform of a Losert function Φ_{n,m,k}.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        /// The function, `n,m,k`.
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        phi: String,
    },
    /// Kac-Moody bracket of two generators, or the bracket and cocycle table over the grade ranges.
    Bracket {
        /// Generator `a:n:m:k` with a an index or a name (K0, K+, K-).
        #[arg(long, allow_hyphen_values = true, requires = "right")]
        left: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "left")]
        right: Option<String>,
    },
    /// Clebsch-Gordan expansion of a product of two matrix elements.
    Cg {
        /// Factor `<rep>@<n>,<m>`.
        #[arg(long, default_value = "discrete:1:+@1,1", allow_hyphen_values = true)]
        left: String,
        #[arg(long, default_value = "discrete:1:+@1,1", allow_hyphen_values = true)]
        right: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TabulateWhat {
    Psi,
    Phi,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthonormality,
    Eigen,
    Ladder,
    Gram,
    Jacobi,
    Cocycle,
    Parseval,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Analyze,
    Synthesize,
    Convert,
}

fn parse_half(s: &str) -> Result<HalfInt, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rep(s: &str) -> Result<RepLabel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn parse_range(s: &str) -> Result<GradeRange, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let (lo, hi) = (parse_half(a)?, parse_half(b)?);
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(GradeRange { lo, hi })
}

fn run(cli: &Cli) -> sl2_harmonic::Result<Report> {
    let p = &cli.params;
    match &cli.command {
        Command::Tabulate { what } => commands::tabulate(p, *what),
        Command::Verify { suite } => commands::verify(p, *suite),
        Command::Transform { op, phi } => commands::transform(p, *op, phi),
        Command::Bracket { left, right } => commands::bracket(p, left.as_deref(), right.as_deref()),
        Command::Cg { left, right } => commands::cg(p, left, right),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e @ (Error::InvalidInput(_) | Error::Domain(_) | Error::UnsupportedSector(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = report.write(cli.params.format, cli.params.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    for c in &failing {
        eprintln!("FAIL {}: {:e} (tolerance {:e})", c.name, c.value, c.tolerance);
    }
    if failing.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
