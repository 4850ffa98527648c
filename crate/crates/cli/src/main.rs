mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isorec::semilocal::DEFAULT_BUDGET;
use isorec::CorePolynomial;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "isorec", version, about = "Linear recursions, isobaric polynomials and the rings F_p[x]/(C)")]
pub struct Cli {
    /// Emit a JSON report envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized steps (factorization, sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum number of ring elements an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a Fibonacci, Lucas, weighted or Schur isobaric polynomial.
    Poly(PolyArgs),
    /// Terms of the recursion seeded with (0, ..., 0, 1), or its traces.
    Seq(SeqArgs),
    /// Period of the recursion mod p, or periodicity over Z.
    Period(PeriodArgs),
    /// Periods and ramification over a range of primes.
    Scan(ScanArgs),
    /// Structure of F_p[x]/(C).
    Ring(RingArgs),
    /// Run verification sweeps.
    Verify(VerifyArgs),
    /// Factor C mod p.
    Factor(FactorArgs),
    /// Discriminant of C and the primes dividing it.
    Disc(DiscArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolyKind {
    Gfp,
    Glp,
    Wip,
    Schur,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    pub kind: PolyKind,
    #[arg(short)]
    pub k: usize,
    /// Isobaric degree (ignored for schur).
    #[arg(short, default_value_t = 0)]
    pub n: u64,
    /// Weight vector for wip, e.g. 1,1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Option<Vec<i64>>,
    /// Partition for schur, e.g. 2,1.
    #[arg(long, value_delimiter = ',')]
    pub shape: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 15, allow_hyphen_values = true)]
    pub to: i64,
    /// Reduce mod this prime.
    #[arg(short)]
    pub p: Option<u64>,
    /// Print tr(A^n) instead of the terms.
    #[arg(long)]
    pub traces: bool,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
    #[arg(short, required_unless_present = "integers", conflicts_with = "integers")]
    pub p: Option<u64>,
    /// Decide periodicity of the integer sequence.
    #[arg(long)]
    pub integers: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
    /// Inclusive prime range, e.g. 2..11.
    #[arg(long, value_parser = parse_range)]
    pub primes: (u64, u64),
}

#[derive(Args, Debug)]
pub struct RingArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
    #[arg(short)]
    pub p: u64,
    /// Include the orbit partition under multiplication by lambda.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Thm67,
    Thm68,
    Orbits,
    Schur,
    Traces,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Coefficient range for k <= 2.
    #[arg(long)]
    pub t_range: Option<i64>,
    /// Coefficient range for k >= 3.
    #[arg(long)]
    pub t_range_high: Option<i64>,
    #[arg(long)]
    pub p_max: Option<u64>,
    /// Skip cells with p^k above this.
    #[arg(long)]
    pub size_cap: Option<u64>,
    /// Random samples for the schur suite.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
    #[arg(short)]
    pub p: u64,
}

#[derive(Args, Debug)]
pub struct DiscArgs {
    #[arg(value_parser = parse_core, allow_hyphen_values = true)]
    pub core: CorePolynomial,
}

fn parse_core(s: &str) -> Result<CorePolynomial, String> {
    s.parse().map_err(|e: isorec::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

/// Result of one command: text for humans, a JSON payload, and whether every
/// asserted check passed.
pub struct Outcome {
    pub text: String,
    pub payload: serde_json::Value,
    pub ok: bool,
}

#[derive(Serialize)]
struct ReportEnvelope<'a> {
    command: &'a str,
    argv: Vec<String>,
    version: &'static str,
    timing: Timing,
    payload: &'a serde_json::Value,
    ok: bool,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Poly(_) => "poly",
        Command::Seq(_) => "seq",
        Command::Period(_) => "period",
        Command::Scan(_) => "scan",
        Command::Ring(_) => "ring",
        Command::Verify(_) => "verify",
        Command::Factor(_) => "factor",
        Command::Disc(_) => "disc",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        let envelope = ReportEnvelope {
            command: command_name(&cli.command),
            argv: std::env::args().skip(1).collect(),
            version: env!("CARGO_PKG_VERSION"),
            timing: Timing {
                elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
            },
            payload: &outcome.payload,
            ok: outcome.ok,
        };
        println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
    } else {
        print!("{}", outcome.text);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
