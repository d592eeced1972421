//! The `orbmeas` command-line interface.
//!
//! Exit codes: 0 success, 1 validation error (bad flags, parse failures,
//! singular or off-hyperplane points), 2 verification failure (the
//! Monte-Carlo estimate misses the exact value beyond the threshold),
//! 3 internal error (a broken invariant — never expected on valid input).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::str::FromStr;

use orbmeas_core::measures::{
    convolution_moment, projection_moment, rational_to_f64, MomentResult, Rank1Density,
};
use orbmeas_core::{Error as CoreError, Family, Point, Rational, RootSystem};

use crate::oracle::{
    compare_estimate, mc_convolution_moment, mc_projection_moment, OracleError,
};
use crate::output;
use crate::parse::{parse_polynomial, ParseError};

#[derive(Debug, Parser)]
#[command(
    name = "orbmeas",
    version,
    about = "Exact moments of projected orbital measures and radial convolutions on compact Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact moment of the projected orbital measure at a
    Project(ProjectArgs),
    /// Exact moment of the radial convolution of the orbits of a and b
    Convolve(ConvolveArgs),
    /// Apolar norm squared of the discriminant of a root system
    Gram(GramArgs),
    /// Rank-1 density table on a uniform grid (CSV)
    Density(DensityArgs),
    /// Monte-Carlo cross-check of an exact moment (A-series only)
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Project,
    Convolve,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Root system, e.g. A2, B3, G2
    #[arg(long = "type", value_name = "SYSTEM")]
    pub system: String,
    /// Base point as comma-separated rationals, e.g. "1,0,-1" or "1/2,-1/2"
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Polynomial in x1..xn (n = ambient dimension)
    #[arg(long)]
    pub poly: String,
    /// Subtract the coordinate mean from the points first (A-series only)
    #[arg(long)]
    pub center: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    #[arg(long = "type", value_name = "SYSTEM")]
    pub system: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub center: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long = "type", value_name = "SYSTEM")]
    pub system: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Scalar rank-1 parameter a (projection) — with --b, the regime 0 < b < a
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Second scalar parameter; selects the convolution density
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Number of grid points across the support (endpoints included)
    #[arg(long, default_value_t = 25)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long = "type", value_name = "SYSTEM")]
    pub system: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Required when --mode convolve
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// RNG seed; falls back to ORBMEAS_SEED, then 0
    #[arg(long, env = "ORBMEAS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest |z| accepted as agreement
    #[arg(long, default_value_t = 4.0)]
    pub threshold: f64,
    #[arg(long)]
    pub center: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Parse(_) | AppError::Invalid(_) => 1,
            AppError::Core(e) => match e {
                // these mark broken invariants, not bad input
                CoreError::NotDivisible
                | CoreError::AsymmetricAverage
                | CoreError::WeylClosureExceeded { .. } => 3,
                _ => 1,
            },
            AppError::Oracle(e) => match e {
                OracleError::NonHermitian { .. } | OracleError::NoConvergence { .. } => 3,
                _ => 1,
            },
        }
    }
}

fn invalid(msg: impl Into<String>) -> AppError {
    AppError::Invalid(msg.into())
}

pub fn main_entry() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> u8 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<u8, AppError> {
    match command {
        Command::Project(args) => {
            let rs = parse_system(&args.system)?;
            let a = parse_point(&args.a, &rs, args.center)?;
            let f = parse_polynomial(&args.poly, rs.dim())?;
            let res = projection_moment(&rs, &a, &f)?;
            emit_moment(&res, args.format);
            Ok(0)
        }
        Command::Convolve(args) => {
            let rs = parse_system(&args.system)?;
            let a = parse_point(&args.a, &rs, args.center)?;
            let b = parse_point(&args.b, &rs, args.center)?;
            let g = parse_polynomial(&args.poly, rs.dim())?;
            let res = convolution_moment(&rs, &a, &b, &g)?;
            emit_moment(&res, args.format);
            Ok(0)
        }
        Command::Gram(args) => {
            let rs = parse_system(&args.system)?;
            match args.format {
                Format::Json => print_json(&output::gram_to_json(&rs.label(), rs.gram_delta())),
                Format::Text => println!(
                    "{} (~ {})",
                    rs.gram_delta(),
                    rational_to_f64(rs.gram_delta())
                ),
            }
            Ok(0)
        }
        Command::Density(args) => {
            if args.points < 2 {
                return Err(invalid("--points must be at least 2"));
            }
            let a = parse_rational(&args.a)?;
            let density = match &args.b {
                Some(b) => Rank1Density::convolution(a, parse_rational(b)?)?,
                None => Rank1Density::projection(a)?,
            };
            print!("{}", output::density_to_csv(&density, args.points));
            Ok(0)
        }
        Command::Verify(args) => verify(args),
    }
}

fn verify(args: VerifyArgs) -> Result<u8, AppError> {
    let rs = parse_system(&args.system)?;
    if rs.family() != Family::A {
        return Err(invalid(
            "Monte-Carlo verification samples unitary orbits and supports only A-series types",
        ));
    }
    let n = rs.dim();
    let a = parse_point(&args.a, &rs, args.center)?;
    let f = parse_polynomial(&args.poly, n)?;
    let (exact, estimate, mode) = match args.mode {
        Mode::Project => {
            let exact = projection_moment(&rs, &a, &f)?;
            let est = mc_projection_moment(n, &a, &f, args.samples, args.seed)?;
            (exact, est, "project")
        }
        Mode::Convolve => {
            let b = args
                .b
                .as_deref()
                .ok_or_else(|| invalid("--mode convolve requires --b"))?;
            let b = parse_point(b, &rs, args.center)?;
            let exact = convolution_moment(&rs, &a, &b, &f)?;
            let est = mc_convolution_moment(n, &a, &b, &f, args.samples, args.seed)?;
            (exact, est, "convolve")
        }
    };
    let report = compare_estimate(&exact.value, &estimate, args.threshold);
    match args.format {
        Format::Json => print_json(&output::verify_to_json(mode, &exact, &report)),
        Format::Text => println!("{}", output::verify_to_text(&exact, &report)),
    }
    Ok(if report.pass { 0 } else { 2 })
}

fn emit_moment(res: &MomentResult, format: Format) {
    match format {
        Format::Json => print_json(&output::moment_to_json(res)),
        Format::Text => println!("{}", output::moment_to_text(res)),
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values built here always serialize")
    );
}

fn parse_system(s: &str) -> Result<RootSystem, AppError> {
    let mut chars = s.trim().chars();
    let letter = chars
        .next()
        .ok_or_else(|| invalid("empty root-system type"))?;
    let family = match letter.to_ascii_uppercase() {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        'G' => Family::G,
        other => {
            return Err(invalid(format!(
                "unknown root-system family '{other}' (expected A, B, C, D, or G)"
            )))
        }
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| invalid(format!("malformed root-system type '{s}' (expected e.g. A2)")))?;
    Ok(RootSystem::build(family, rank)?)
}

fn parse_rational(s: &str) -> Result<Rational, AppError> {
    Rational::from_str(s.trim()).map_err(|_| invalid(format!("invalid rational '{}'", s.trim())))
}

fn parse_point(s: &str, rs: &RootSystem, center: bool) -> Result<Point, AppError> {
    let coords = s
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    let point = Point::new(coords);
    if point.dim() != rs.dim() {
        return Err(invalid(format!(
            "point has {} coordinates but {} lives in dimension {}",
            point.dim(),
            rs.label(),
            rs.dim()
        )));
    }
    if center {
        if rs.family() != Family::A {
            return Err(invalid(
                "--center rebalances to the trace-zero hyperplane and applies only to A-series types",
            ));
        }
        return Ok(point.centered());
    }
    Ok(point)
}
