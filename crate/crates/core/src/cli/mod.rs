//! Command-line front end: `sample`, `train`, `analyze <study>` and
//! `reproduce <recipe>`.

pub mod commands;
pub mod config;
pub mod recipes;

pub use config::{ExperimentConfig, Seeds, TargetSpec, SCHEMA_VERSION};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::agent::AgentError;
use crate::analysis::AnalysisError;
use crate::qas::QasError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
pub const EXIT_MALFORMED: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Malformed { .. } => EXIT_MALFORMED,
        }
    }
}

impl From<QasError> for CliError {
    fn from(e: QasError) -> Self {
        match e {
            QasError::Io { context, source } => CliError::Io {
                path: PathBuf::from(context),
                source,
            },
            QasError::Agent(AgentError::Io(source)) => CliError::Io {
                path: PathBuf::from("checkpoint"),
                source,
            },
            QasError::Config(m) => CliError::Usage(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::BadArgument(m) => CliError::Usage(m),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Smoke,
    Desk,
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "rlvqsd",
    version,
    about = "Reinforcement-learning architecture search for variational state diagonalization"
)]
pub struct Cli {
    /// Base RNG seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory (default: current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run size for `reproduce`.
    #[arg(long, global = true, value_enum)]
    pub scale: Option<Scale>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample Hilbert–Schmidt random states as JSON files, or an ensemble CSV.
    Sample {
        /// Number of qubits per state.
        #[arg(long, default_value_t = 2)]
        qubits: usize,
        /// Number of states.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write `fig1_ensemble.csv` (two qubits) instead of one file per state.
        #[arg(long)]
        ensemble: bool,
    },
    /// Run one search experiment from a JSON config.
    Train {
        /// Experiment config (JSON). Without it the default config is used.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the entanglement-enhancing block parameter.
        #[arg(long)]
        ee_theta: Option<f64>,
        /// Override the episode count.
        #[arg(long)]
        episodes: Option<u64>,
        /// Continue from a checkpoint written by an earlier run in the same output directory.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write the effective config to this path and exit.
        #[arg(long)]
        print_config: Option<PathBuf>,
    },
    /// Analyze episode logs (run directories or JSONL files).
    Analyze {
        #[arg(value_enum)]
        study: Study,
        /// Run directories or `episodes.jsonl` files.
        logs: Vec<PathBuf>,
        /// First k of the eta scan.
        #[arg(long, default_value_t = 0.0)]
        k_min: f64,
        /// Last k of the eta scan.
        #[arg(long, default_value_t = 1.0)]
        k_max: f64,
        /// Grid step of the eta scan.
        #[arg(long, default_value_t = 0.005)]
        k_step: f64,
        /// Sample count for the ensemble study.
        #[arg(long, default_value_t = 100_000)]
        count: usize,
    },
    /// Run a scripted study named after a table or figure.
    Reproduce {
        #[arg(value_enum)]
        recipe: recipes::Recipe,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Bounds,
    EtaScan,
    Contribution,
    EigenCorrelation,
    Resources,
    Ensemble,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match &cli.command {
        Command::Sample {
            qubits,
            count,
            ensemble,
        } => commands::sample(&out, cli.seed.unwrap_or(0), *qubits, *count, *ensemble),
        Command::Train {
            config,
            ee_theta,
            episodes,
            resume,
            print_config,
        } => {
            let opts = commands::TrainOptions {
                config: config.clone(),
                out: cli.out.clone(),
                seed: cli.seed,
                ee_theta: *ee_theta,
                episodes: *episodes,
                resume: resume.clone(),
                print_config: print_config.clone(),
            };
            commands::train(&opts)
        }
        Command::Analyze {
            study,
            logs,
            k_min,
            k_max,
            k_step,
            count,
        } => commands::analyze(
            *study,
            logs,
            &out,
            &commands::AnalyzeOptions {
                k_min: *k_min,
                k_max: *k_max,
                k_step: *k_step,
                count: *count,
                seed: cli.seed.unwrap_or(0),
            },
        ),
        Command::Reproduce { recipe } => {
            recipes::reproduce(*recipe, cli.scale.unwrap_or(Scale::Desk), &out, cli.seed.unwrap_or(0))
        }
    }
}
