//! The `hklab` command line: configuration parsing, dispatch to
//! `hklab-core`, and CSV/JSON output.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 internal error.

mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::emit_plotdata;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Internal(String),
}

impl From<hklab_core::Error> for CliError {
    fn from(e: hklab_core::Error) -> Self {
        use hklab_core::Error;
        match e {
            Error::Validation(_) | Error::Parse { .. } => CliError::Validation(e.to_string()),
            Error::Structural(_) | Error::Arithmetic(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// JSON configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = "hklab-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    pub format: Format,
    /// Worker threads; HKLAB_THREADS overrides. Defaults to all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Acknowledge that fibers are reduced (required by the uniform-bound probe).
    #[arg(long)]
    pub assume_reduced: bool,
    /// Recorded in JSON summaries; no command draws random numbers.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis, colength and multiplication matrices of J + I.
    Groebner(CommonArgs),
    /// Hilbert–Kunz function and limit estimate.
    Hk(CommonArgs),
    /// Hilbert–Samuel function and multiplicity.
    Hs(CommonArgs),
    /// F-rational signature grid search over the socle.
    Rsig(CommonArgs),
    /// Relative F-rational signature over candidate ideals.
    Csig(CommonArgs),
    /// Generic-versus-special checks on a parametric family.
    Sweep(CommonArgs),
    /// Reduction modulo primes of an integer family.
    Modp(CommonArgs),
    /// Trace-form discriminant of the finite algebra K[x]/(J + I).
    Disc(CommonArgs),
}

#[derive(Clone, Debug, Parser)]
#[command(name = "hklab", version, about = "Exact Hilbert–Kunz and Hilbert–Samuel computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Groebner(c)
            | Command::Hk(c)
            | Command::Hs(c)
            | Command::Rsig(c)
            | Command::Csig(c)
            | Command::Sweep(c)
            | Command::Modp(c)
            | Command::Disc(c) => c,
        }
    }
}

/// Whether every check passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let n = match std::env::var("HKLAB_THREADS") {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            CliError::Validation(format!("HKLAB_THREADS={v:?} is not a positive integer"))
        })?),
        Err(_) => flag,
    };
    if n == Some(0) {
        return Err(CliError::Validation("threads must be at least 1".into()));
    }
    Ok(n)
}

/// Runs one subcommand with its own thread pool.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let common = cli.command.common();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(common.threads)? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| commands::dispatch(&cli.command))
}

/// Maps a run result to the process exit code, printing errors to stderr.
pub fn exit_code(result: &Result<Outcome, CliError>) -> i32 {
    match result {
        Ok(Outcome { pass: true }) => 0,
        Ok(Outcome { pass: false }) => 1,
        Err(e) => {
            eprintln!("hklab: {e}");
            e.exit_code()
        }
    }
}
