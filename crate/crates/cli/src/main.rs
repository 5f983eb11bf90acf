//! `turan`: build patterns, compute Lagrangians, certify tower polynomials
//! and run the verification suite.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;
mod suite;

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const CHECK: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const RESOURCE: u8 = 3;

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: Self::INPUT,
            message: message.into(),
        }
    }

    pub fn check(message: impl Into<String>) -> Self {
        CliError {
            code: Self::CHECK,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::input(format!("{}: {err}", path.display()))
    }
}

impl From<turan_core::Error> for CliError {
    fn from(err: turan_core::Error) -> Self {
        let code = if err.is_resource() {
            Self::RESOURCE
        } else {
            Self::INPUT
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "turan",
    version,
    about = "Pattern Lagrangians, blowups and nested-radical degree certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, transform and inspect pattern files.
    #[command(subcommand)]
    Pattern(PatternCommand),
    /// Maximize the Lagrange polynomial of a pattern over the simplex.
    Lagrangian(LagrangianArgs),
    /// Build p_k and its degree certificate.
    Tower(TowerArgs),
    /// Run the full verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum PatternCommand {
    /// The recursive pattern P_k.
    BuildPk {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// A pattern from the built-in catalogue.
    Named {
        name: String,
        #[command(flatten)]
        out: Output,
    },
    /// Add `s` fresh indices to every edge.
    PlusS {
        #[arg(long)]
        s: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Delete index `i` and every edge containing it.
    RemoveIndex {
        #[arg(long)]
        i: usize,
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Write the blowup hypergraph for the given part sizes.
    Blowup {
        /// Comma-separated part sizes, one per index.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        file: PathBuf,
        #[arg(long, default_value_t = turan_core::pattern::DEFAULT_EDGE_CAP)]
        edge_cap: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Print uniformity, part count and edge count.
    Info { file: PathBuf },
}

#[derive(Args)]
pub struct LagrangianArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Also report lambda(P - i) for every index.
    #[arg(long)]
    pub minimality: bool,
    /// Also report the density of the blowup on this many vertices.
    #[arg(long)]
    pub density_n: Option<usize>,
    /// `key = value` optimizer settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write a structured report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct TowerArgs {
    #[arg(long)]
    pub k: u32,
    /// Working precision in bits; defaults by level.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Print the coefficients of p_k, constant term first.
    #[arg(long)]
    pub emit_poly: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = turan_core::tower::DEFAULT_TOWER_CAP)]
    pub cap: u32,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Working precision for residuals and certificates.
    #[arg(long, default_value_t = 512)]
    pub precision: u32,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Include wall time in the report.
    #[arg(long)]
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pattern(cmd) => commands::pattern(cmd),
        Command::Lagrangian(args) => commands::lagrangian(args),
        Command::Tower(args) => commands::tower(args),
        Command::VerifyAll(args) => suite::verify_all(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
