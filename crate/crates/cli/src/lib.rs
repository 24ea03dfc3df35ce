//! The `quarr` command line: load an arrangement from a JSON file or the
//! built-in catalog, then query its invariants or validate the de Rham
//! form numerically.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a recurrence
//! mismatch, an unconverged quadrature, ...), 2 for usage problems —
//! unreadable files, malformed input, unknown catalog names.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quarr_core::arrangement::{self, Arrangement};
use quarr_core::Error as CoreError;

pub mod commands;
pub mod formats;

#[derive(Parser)]
#[command(
    name = "quarr",
    version,
    about = "Exact invariants of quaternionic hyperplane arrangement complements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Summarize an arrangement.  JSON output round-trips as input.
    Info(SourceArgs),
    /// Intersection lattice with Mobius numbers and covering relations.
    Lattice(SourceArgs),
    /// Poincare polynomial, Betti numbers, Euler characteristic.
    Poincare(SourceArgs),
    /// Orlik-Solomon algebra: graded dimensions, nbc counts, circuits.
    Os(SourceArgs),
    /// Check deletion-restriction on every hyperplane.
    VerifyRecurrence(SourceArgs),
    /// Probe, normalize, and pull back the de Rham 3-form numerically.
    ValidateForm(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true))]
pub struct SourceArgs {
    /// Arrangement file (JSON; see the repository README for the schema)
    #[arg(value_name = "FILE", group = "source")]
    pub file: Option<PathBuf>,

    /// Built-in family: boolean, braid, generic, or u23
    #[arg(long, group = "source")]
    pub catalog: Option<String>,

    /// Quaternionic dimension for catalog families
    #[arg(long)]
    pub n: Option<usize>,

    /// Hyperplane count for the generic family
    #[arg(long)]
    pub m: Option<usize>,

    /// Seed for seeded constructions
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Quadrature sample budget per scheme
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
}

/// What a command produced: rendered stdout plus whether the underlying
/// checks (if the verb runs any) all held.
pub struct Outcome {
    pub stdout: String,
    pub checks_ok: bool,
}

impl Outcome {
    fn report(stdout: String) -> Self {
        Outcome {
            stdout,
            checks_ok: true,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable or malformed file, unknown catalog, bad
    /// numbers.  Exit code 2.
    Usage(String),
    /// The computation itself refused or failed.  Exit code 1.
    Check(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            // Problems with what the user handed us.
            CoreError::ZeroRow
            | CoreError::ZeroRowAt { .. }
            | CoreError::RowLengthMismatch { .. }
            | CoreError::DuplicateHyperplane { .. }
            | CoreError::UnknownCatalog(_)
            | CoreError::ParseNumber(_)
            | CoreError::IndexOutOfRange { .. } => CliError::Usage(e.to_string()),
            // Problems the mathematics ran into.
            other => CliError::Check(other.to_string()),
        }
    }
}

pub fn load_arrangement(source: &SourceArgs) -> Result<Arrangement, CliError> {
    match (&source.file, &source.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            formats::parse_arrangement(&text)
        }
        (None, Some(name)) => Ok(arrangement::catalog(name, source.n, source.m, source.seed)?),
        // clap's arg group guarantees exactly one source.
        _ => unreachable!("clap enforces exactly one of FILE / --catalog"),
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Info(src) => {
            let arr = load_arrangement(&src)?;
            Ok(Outcome::report(commands::info(&arr, src.format)))
        }
        Command::Lattice(src) => {
            let arr = load_arrangement(&src)?;
            Ok(Outcome::report(commands::lattice(&arr, src.format)))
        }
        Command::Poincare(src) => {
            let arr = load_arrangement(&src)?;
            Ok(Outcome::report(commands::poincare(&arr, src.format)))
        }
        Command::Os(src) => {
            let arr = load_arrangement(&src)?;
            commands::os_algebra(&arr, src.format)
        }
        Command::VerifyRecurrence(src) => {
            let arr = load_arrangement(&src)?;
            commands::verify_recurrence(&arr, src.format)
        }
        Command::ValidateForm(args) => {
            let arr = load_arrangement(&args.source)?;
            commands::validate_form(&arr, args.samples, args.source.seed, args.source.format)
        }
    }
}
