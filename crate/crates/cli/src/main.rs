//! `realize`: generate, time-change, check, and expand realizable sequences
//! over a newline-delimited decimal stream format. Commands read standard
//! input and write standard output unless --in/--out are given; exit code 0
//! means pass, 1 a domain failure, 2 a usage or parse error.

use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::{fs, process};

use clap::{Args, Parser, Subcommand, ValueEnum};

use realize_core::realizability;
use realize_core::timechange;
use realize_core::zeta;
use realize_core::{seqgen, Error, IntMatrix, OrbitCounts, RationalFunction, Sequence, TimeChange};

#[derive(Parser)]
#[command(
    name = "realize",
    version,
    about = "Realizable integer sequences: generators, time-changes, checks, and zeta expansions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the periodic-point counts of a named system
    Gen(GenArgs),
    /// Reindex a sequence along one or more time-changes
    Timechange(TimechangeArgs),
    /// Check a prefix against the realizability criterion
    Check(CheckArgs),
    /// Convert periodic-point counts to closed-orbit counts
    Orbits(IoArgs),
    /// Convert closed-orbit counts to periodic-point counts
    Fix(IoArgs),
    /// Expand a dynamical zeta function as power-series coefficients
    Zeta(ZetaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorName {
    FullShift,
    Constant,
    GoldenMean,
    Sigma,
    SingleOrbit,
    LehmerPierce,
    NegatedShift,
}

#[derive(Args)]
struct GenArgs {
    /// Which system to generate
    #[arg(value_enum)]
    name: GeneratorName,
    /// Number of terms
    #[arg(long)]
    n: usize,
    /// Alphabet size for full-shift and negated-shift
    #[arg(long)]
    base: Option<u64>,
    /// Point count for constant
    #[arg(long)]
    size: Option<u64>,
    /// Orbit length for single-orbit
    #[arg(long)]
    len: Option<u64>,
    /// Matrix for lehmer-pierce, rows separated by ';': "0,1;1,1"
    #[arg(long)]
    matrix: Option<String>,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TimechangeArgs {
    /// Time-change expression ("n^2", "3n^2+n+1", "g2", "g{2,3}",
    /// "table:3,1,4"); repeat to apply several in order
    #[arg(long = "h", required = true)]
    maps: Vec<String>,
    /// Read from a file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Emit the witness report as JSON instead of text
    #[arg(long)]
    json: bool,
    /// Read from a file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    /// Read from a file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZetaArgs {
    /// Truncation degree; defaults to the input length
    #[arg(long)]
    terms: Option<usize>,
    /// Expand an integer rational function "num;den" instead of reading input
    #[arg(long, requires = "terms", conflicts_with = "input")]
    rational: Option<String>,
    /// Exit 1 when any coefficient is non-integral
    #[arg(long)]
    check_integral: bool,
    /// Read from a file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

/// 2 for malformed invocations and inputs, 1 for mathematically valid
/// requests that fail in the domain.
fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ParseSequence { .. }
        | Error::ParseTimeChange(_)
        | Error::ParseMatrix(_)
        | Error::ParseRationalFunction(_)
        | Error::EmptySequence
        | Error::NotPrime { .. }
        | Error::InvalidPrimeSet(_)
        | Error::EmptyTable
        | Error::ZeroMonomialCoefficient
        | Error::NotSquare
        | Error::ZeroConstantDenominator
        | Error::ShiftAlphabetTooSmall { .. }
        | Error::ZeroOrbitLength
        | Error::IndexZero
        | Error::CrossCheckIndexTooSmall
        | Error::CrossCheckExponentZero
        | Error::InsufficientPrefix { .. } => 2,
        Error::NegativeOrbitCount { .. }
        | Error::TableDomainExceeded { .. }
        | Error::NonPositiveTimeChangeValue { .. }
        | Error::IndexOverflow { .. }
        | Error::EmptyTimeChangeOutput { .. }
        | Error::NonMonomialPolynomialRequired
        | Error::SearchBudgetExhausted { .. }
        | Error::NoCounterexampleFound { .. }
        | Error::NonErgodicMatrix { .. } => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("realize: {}", failure.message);
            failure.code
        }
    };
    process::exit(code);
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Gen(args) => run_gen(args),
        Command::Timechange(args) => run_timechange(args),
        Command::Check(args) => run_check(args),
        Command::Orbits(args) => run_orbits(args),
        Command::Fix(args) => run_fix(args),
        Command::Zeta(args) => run_zeta(args),
    }
}

fn run_gen(args: GenArgs) -> Result<i32, Failure> {
    let sequence = match args.name {
        GeneratorName::FullShift => {
            seqgen::full_shift(require(args.base, "full-shift", "--base")?, args.n)?
        }
        GeneratorName::Constant => {
            seqgen::constant_system(require(args.size, "constant", "--size")?, args.n)?
        }
        GeneratorName::GoldenMean => seqgen::golden_mean(args.n)?,
        GeneratorName::Sigma => seqgen::sigma_system(args.n)?,
        GeneratorName::SingleOrbit => {
            seqgen::single_orbit(require(args.len, "single-orbit", "--len")?, args.n)?
        }
        GeneratorName::LehmerPierce => {
            let text = require(args.matrix, "lehmer-pierce", "--matrix")?;
            let matrix: IntMatrix = text.parse()?;
            seqgen::lehmer_pierce(&matrix, args.n)?
        }
        GeneratorName::NegatedShift => {
            seqgen::negated_shift(require(args.base, "negated-shift", "--base")?, args.n)?
        }
    };
    write_text(args.out.as_deref(), &sequence.to_text())?;
    Ok(0)
}

fn require<T>(value: Option<T>, generator: &str, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure {
        code: 2,
        message: format!("{generator} requires {flag}"),
    })
}

fn run_timechange(args: TimechangeArgs) -> Result<i32, Failure> {
    let input = Sequence::from_text(&read_text(args.input.as_deref())?)?;
    let input_len = input.len();
    let mut current = input;
    for expr in &args.maps {
        let map: TimeChange = expr.parse()?;
        current = timechange::apply(&map, &current)?;
    }
    if current.len() < input_len {
        eprintln!(
            "realize: kept {} of {} terms; beyond that the time-change leaves the input prefix",
            current.len(),
            input_len
        );
    }
    write_text(args.out.as_deref(), &current.to_text())?;
    Ok(0)
}

fn run_check(args: CheckArgs) -> Result<i32, Failure> {
    let sequence = Sequence::from_text(&read_text(args.input.as_deref())?)?;
    let report = realizability::check_realizable(&sequence);
    if args.json {
        println!("{}", report.to_json_string());
    } else {
        println!("{report}");
    }
    Ok(if report.is_realizable_prefix() { 0 } else { 1 })
}

fn run_orbits(args: IoArgs) -> Result<i32, Failure> {
    let sequence = Sequence::from_text(&read_text(args.input.as_deref())?)?;
    match realizability::orbit_counts(&sequence) {
        Ok(orbits) => {
            let counts = Sequence::new(orbits.into_counts()).expect("orbit counts are non-empty");
            write_text(args.out.as_deref(), &counts.to_text())?;
            Ok(0)
        }
        Err(report) => Err(Failure {
            code: 1,
            message: report.to_string(),
        }),
    }
}

fn run_fix(args: IoArgs) -> Result<i32, Failure> {
    let sequence = Sequence::from_text(&read_text(args.input.as_deref())?)?;
    let orbits = OrbitCounts::new(sequence.into_terms())?;
    let fix = realizability::fix_from_orbits(&orbits);
    write_text(args.out.as_deref(), &fix.to_text())?;
    Ok(0)
}

fn run_zeta(args: ZetaArgs) -> Result<i32, Failure> {
    let series = if let Some(expr) = &args.rational {
        let f: RationalFunction = expr.parse()?;
        let degree = args.terms.expect("clap enforces --terms with --rational");
        zeta::expand_rational(&f, degree)
    } else {
        let sequence = Sequence::from_text(&read_text(args.input.as_deref())?)?;
        let degree = args.terms.unwrap_or(sequence.len());
        zeta::zeta_exp(&sequence, degree)?
    };
    let mut listing = String::new();
    for (index, coefficient) in series.coefficients().iter().enumerate() {
        listing.push_str(&index.to_string());
        listing.push('\t');
        listing.push_str(&zeta::coefficient_string(coefficient));
        listing.push('\n');
    }
    write_text(args.out.as_deref(), &listing)?;
    if args.check_integral {
        if let zeta::IntegralityCheck::FirstNonIntegral { index, coefficient } =
            zeta::integrality_check(&series)
        {
            eprintln!(
                "realize: coefficient {} at index {index} is not an integer",
                zeta::coefficient_string(&coefficient)
            );
            return Ok(1);
        }
    }
    Ok(0)
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure {
            code: 2,
            message: format!("cannot read {}: {e}", p.display()),
        }),
        None => {
            let mut buffer = String::new();
            io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Failure {
                    code: 2,
                    message: format!("cannot read standard input: {e}"),
                })?;
            Ok(buffer)
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
