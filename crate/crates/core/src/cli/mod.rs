//! Command-line front end: scenario files in, JSON or CSV out.

mod commands;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{sample_grid, Certificate, Check, Grid, GridSample};
pub use scenario::{Scenario, ScenarioError};

use crate::error::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "kpii-stem", version, about = "Resonant KPII 3-soliton solutions and their stems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Residual,
    Limits,
    Asymptotics,
    Ridge,
    All,
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    /// Scenario JSON file.
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolve a scenario and print the solution, catalog and velocity table.
    Build {
        #[command(flatten)]
        scenario: ScenarioArg,
    },
    /// Sample u on a regular grid.
    Sample {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// Time.
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// xmin,xmax,nx,ymin,ymax,ny
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Stem endpoints, length and midpoint amplitude at each time.
    Stem {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// Comma-separated times.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run numerical checks and print a certificate.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Replaces the primary tolerance of every check.
        #[arg(long)]
        tol: Option<f64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample u along a line.
    Section {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// Time.
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Trajectory line of an arm, e.g. "S_{1+3}" or "^S_{1+2+3}".
        #[arg(long, group = "line_spec")]
        arm: Option<String>,
        /// Explicit line A,B,C meaning Ax + By + C = 0.
        #[arg(long, group = "line_spec", allow_hyphen_values = true, value_delimiter = ',')]
        line: Option<Vec<f64>>,
        /// Line perpendicular to the stem through its midpoint.
        #[arg(long, group = "line_spec")]
        perp: bool,
        /// smin,smax in arclength from the anchor.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        range: Option<Vec<f64>>,
        /// Number of samples.
        #[arg(long, default_value_t = 401)]
        n: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of one command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InadmissibleParameter(_)
            | Error::DegenerateParameter(_)
            | Error::IndeterminateResonance(..)
            | Error::InadmissibleFamily(_) => EXIT_INADMISSIBLE,
            Error::Domain(_)
            | Error::UnsupportedCase(_)
            | Error::UnsupportedOperation(_)
            | Error::UnsupportedFormula(_)
            | Error::DegenerateLine => EXIT_USAGE,
            _ => EXIT_VERIFY_FAILED,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Io(m) => Self::io(m),
            ScenarioError::Parse(m) => Self::usage(m),
        }
    }
}

/// Applies `KPII_STEM_THREADS` to the global rayon pool.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("KPII_STEM_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::usage(format!("KPII_STEM_THREADS must be a positive integer, got {value:?}")))?;
    // A pool configured earlier in this process is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = configure_threads().and_then(|()| commands::execute(&cli.command, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
