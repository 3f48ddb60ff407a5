mod cmd;
mod field;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopf_core::{Patch, Realization, Suite};

#[derive(Parser, Debug)]
#[command(name = "hopfctl", version, about = "Verification suites and field sampling for split Hopf maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Project a spinor to its base point.
    Project(ProjectArgs),
    /// Lift a base point to a spinor through the local section.
    Invert(InvertArgs),
    /// Emit a split algebra's multiplication table.
    Tables(TablesArgs),
    /// Sample the connection and curvature on a grid.
    SampleField(SampleFieldArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Gamma,
    Hopf,
    Gauge,
    Super,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Algebra => vec![Suite::Algebra],
            SuiteArg::Gamma => vec![Suite::Gamma],
            SuiteArg::Hopf => vec![Suite::Hopf],
            SuiteArg::Gauge => vec![Suite::Gauge],
            SuiteArg::Super => vec![Suite::Super],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            s => s.suites()[0].as_str(),
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, env = "HOPFCTL_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp and zero all timings, for byte-identical reruns.
    #[arg(long)]
    no_timestamp: bool,
    /// Override tolerances of checks whose id starts with PREFIX.
    #[arg(long = "tolerance", value_name = "PREFIX=VALUE", value_parser = parse_override)]
    tolerance: Vec<(String, f64)>,
    #[arg(long, hide = true)]
    corrupt_fixture: bool,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected PREFIX=VALUE, got `{s}`"))?;
    let v: f64 = v.parse().map_err(|e| format!("bad tolerance `{v}`: {e}"))?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("tolerance must be positive and finite, got {v}"));
    }
    Ok((k.to_string(), v))
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
    level: u8,
    #[arg(long, value_parser = parse_realization)]
    realization: Realization,
}

fn parse_realization(s: &str) -> Result<Realization, String> {
    s.parse()
}

fn parse_patch(s: &str) -> Result<Patch, String> {
    s.parse()
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    #[command(flatten)]
    map: MapArgs,
    /// `[[re, im], ...]`; level 0 takes two reals `[x1, x2]`.
    #[arg(long)]
    spinor: String,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_parser = parse_patch, default_value = "upper")]
    patch: Patch,
    /// Base point as a JSON array of reals.
    #[arg(long)]
    point: String,
    /// Fiber as `[[re, im], ...]`; defaults to the first basis vector.
    #[arg(long)]
    fiber: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgebraArg {
    SplitComplex,
    SplitQuaternion,
    SplitOctonion,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    algebra: AlgebraArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridMode {
    /// Rescale full-dimensional grid points onto the hyperboloid.
    Project,
    /// Drop full-dimensional grid points that are off the hyperboloid.
    Skip,
}

#[derive(Args, Debug)]
pub struct SampleFieldArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_parser = parse_patch)]
    patch: Patch,
    /// `min:max:steps` per axis, comma separated. With one axis fewer than the
    /// base dimension the last coordinate is solved on the chosen patch.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "project")]
    mode: GridMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit 2 for bad input, 1 for domain failures.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Verify(a) => cmd::verify(a),
        Command::Project(a) => cmd::project(a),
        Command::Invert(a) => cmd::invert(a),
        Command::Tables(a) => cmd::tables(a),
        Command::SampleField(a) => field::sample_field(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hopfctl: {e}");
            ExitCode::from(e.code())
        }
    }
}
