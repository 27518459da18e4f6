//! Command-line front end: solve graph files and run the experiment campaigns.
//!
//! Exit codes: 0 on success, 1 for usage or input errors, 2 when the input
//! graph has a negative cycle.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod record;

pub use record::{write_records, ExperimentRecord, HEADER};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "APSP_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Solver(#[from] tropical_apsp::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(tropical_apsp::Error::NegativeCycle { .. }) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "apsp", version, about = "Min-plus all-pairs shortest paths and experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve all-pairs shortest paths for a graph file.
    Solve(SolveArgs),
    /// Measure kernel iteration counts on random list pairs.
    KernelBench(KernelBenchArgs),
    /// Compare APSP engines on random dense graphs.
    ApspBench(ApspBenchArgs),
    /// Tabulate the exact expectation, its bound and Monte-Carlo estimates.
    Analyze(AnalyzeArgs),
    /// Write a random graph file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Floyd-Warshall
    Fw,
    /// Repeated squaring with a linear scan per entry
    NaiveDc,
    /// Repeated squaring with the sorted early-termination kernel
    FastDc,
}

impl Algorithm {
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Fw => "fw",
            Algorithm::NaiveDc => "naive-dc",
            Algorithm::FastDc => "fast-dc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Distribution {
    Uniform,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Uniform,
    Sparse,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub output: PathBuf,
    /// CSV of per-level kernel statistics.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelBenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub v_list: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub correlation_list: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Distribution::Uniform)]
    pub distribution: Distribution,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: PathBuf,
}

#[derive(Debug, Args)]
pub struct ApspBenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub v_list: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fw,naive-dc,fast-dc")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub v_list: Vec<usize>,
    /// Number of Monte-Carlo permutations per v.
    #[arg(long)]
    pub monte_carlo: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value_t = GraphKind::Uniform)]
    pub kind: GraphKind,
    #[arg(long)]
    pub v: usize,
    #[arg(long, default_value_t = 1.0)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Solve(a) => commands::solve(&a),
        Command::KernelBench(a) => commands::kernel_bench(&a),
        Command::ApspBench(a) => commands::apsp_bench(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Generate(a) => commands::generate(&a),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process (tests) finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub(crate) fn open_input(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(path, e))
}

pub(crate) fn create_output(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

pub(crate) fn finish(path: &Path, mut w: impl Write) -> CliResult<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}
