//! `spinwire` — design and analyze XX spin-chain quantum wires.
//!
//! Subcommands: `design`, `spectrum`, `evolve`, `optimize`, `check-pst`,
//! `sweep`. All output is deterministic: identical flags produce
//! byte-identical bytes. Exit codes: 0 success, 2 invalid arguments or
//! files, 3 numerical failure.

mod chainfile;
mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(spinwire::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

impl From<spinwire::Error> for CliError {
    fn from(e: spinwire::Error) -> Self {
        match e {
            spinwire::Error::InvalidFamily(_) | spinwire::Error::InvalidArgument(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "spinwire",
    version,
    about = "Design and analyze XX spin-chain quantum wires"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Stamp CSV output with the generator version.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a closed-form chain and write it to a chain file.
    Design(DesignArgs),
    /// Eigenvalues and orthogonality weights, one row per level.
    Spectrum(SpectrumArgs),
    /// End-to-end amplitude and site occupation profile at one time.
    Evolve(EvolveArgs),
    /// Search for the transfer time with the smallest fidelity deficit.
    Optimize(OptimizeArgs),
    /// Test the perfect-state-transfer conditions.
    CheckPst(CheckPstArgs),
    /// Coupling profiles or fidelity tables over a list of parent sizes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum FamilyKind {
    Uniform,
    Krawtchouk,
    Surgered,
}

/// Where the chain comes from: family flags or a chain file.
#[derive(Args)]
struct SourceArgs {
    /// Closed-form family.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Last site index N (krawtchouk and surgered families).
    #[arg(long)]
    n: Option<usize>,
    /// Parent-chain last site index M (uniform and surgered families).
    #[arg(long)]
    m: Option<usize>,
    /// Overall coupling scale K.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Load the chain from a chain file instead of family flags.
    #[arg(long, conflicts_with_all = ["family", "n", "m", "k"])]
    chain: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Destination chain file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Scale the spectrum by M+2 (uniform and surgered families only).
    #[arg(long)]
    normalized: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Evaluation time.
    #[arg(long)]
    time: f64,
    /// Interpret --time against the spectrum scaled by M+2.
    #[arg(long)]
    normalized: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Use the spectrum scaled by M+2 (makes 0.5 the natural --t0).
    #[arg(long)]
    normalized: bool,
    /// Center of the search window (defaults to 0.5 with --normalized).
    #[arg(long)]
    t0: Option<f64>,
    /// Half-width of the search window.
    #[arg(long, default_value_t = 0.05)]
    window: f64,
    /// Coarse scan points.
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_OPTIMIZE_GRID)]
    grid: usize,
    /// Width the local refinement narrows to.
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_OPTIMIZE_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckPstArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Relative tolerance of the odd-gap fit.
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_PST_REL_TOL)]
    rel_tol: f64,
    /// Largest odd multiplier searched.
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_PST_QMAX)]
    qmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Last site index N of every surgered chain in the sweep.
    #[arg(long)]
    n: usize,
    /// Parent sizes M to sweep, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m_list: Vec<usize>,
    /// Overall coupling scale K.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Emit coupling profiles instead of the fidelity table.
    #[arg(long)]
    profile: bool,
    /// Center of the per-M search window (fidelity table).
    #[arg(long, default_value_t = 0.5)]
    t0: f64,
    /// Half-width of the per-M search window.
    #[arg(long, default_value_t = 0.05)]
    window: f64,
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_OPTIMIZE_GRID)]
    grid: usize,
    #[arg(long, default_value_t = spinwire::transfer::DEFAULT_OPTIMIZE_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Design(args) => commands::design(args),
        Command::Spectrum(args) => commands::spectrum(args, verbose),
        Command::Evolve(args) => commands::evolve(args, verbose),
        Command::Optimize(args) => commands::optimize(args, verbose),
        Command::CheckPst(args) => commands::check_pst(args, verbose),
        Command::Sweep(args) => commands::sweep(args, verbose),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
