//! `hoqiga` command-line interface.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Higher-order quantum-inspired genetic algorithms.
#[derive(Debug, Parser)]
#[command(name = "hoqiga", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one algorithm on one problem.
    Run(RunArgs),
    /// Execute an experiment plan and export CSV tables and SVG curves.
    Bench(BenchArgs),
    /// Tabulate relative order and quantum factor.
    Theory(TheoryArgs),
    /// Grid-search the contraction factor (or the QIGA1 angle).
    Meta(MetaArgs),
    /// Generate a uniform random 3-SAT instance in DIMACS format.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Order-2 contraction algorithm.
    Qiga2,
    /// Order-r contraction algorithm (needs --order).
    QigaR,
    /// Rotation-gate baseline with independent qubits.
    Qiga1,
    /// Roulette-wheel genetic algorithm.
    Sga,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Register order for qiga-r, 1 <= R <= N.
    #[arg(long, value_name = "R")]
    pub order: Option<usize>,
    /// Contraction factor in (0, 1) for qiga2 / qiga-r [default: 0.9918].
    #[arg(long, value_name = "F")]
    pub mu: Option<f64>,
    /// DIMACS path or onemax:N, trap:PAIRS, 3sat:N:M:SEED, const:N.
    #[arg(long)]
    pub problem: String,
    /// Fitness evaluation budget.
    #[arg(long, default_value_t = 5000)]
    pub maxfe: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the best-so-far trajectory as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Experiment plan (TOML).
    #[arg(long)]
    pub plan: PathBuf,
    /// Output directory.
    #[arg(long, env = "HOQIGA_OUT_DIR", default_value = "results")]
    pub outdir: PathBuf,
    /// Worker threads (overrides the plan).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Problem sizes: `A..B` (inclusive), `A-B`, or a comma list.
    #[arg(long, default_value = "1..40")]
    pub n_range: String,
    /// Register orders.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub orders: Vec<usize>,
    /// Also write the table as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetaArgs {
    /// TOML file with a [tuning] section; overrides the flags below.
    #[arg(long, conflicts_with_all = ["mu", "problem"])]
    pub plan: Option<PathBuf>,
    /// Candidate contraction factors.
    #[arg(long, value_delimiter = ',')]
    pub mu: Vec<f64>,
    /// Suite problem; repeat for more.
    #[arg(long)]
    pub problem: Vec<String>,
    /// Register order for the candidates.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5000)]
    pub maxfe: usize,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the score table as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of variables (at least 3).
    #[arg(long)]
    pub n: usize,
    /// Number of clauses.
    #[arg(long, conflicts_with = "ratio")]
    pub clauses: Option<usize>,
    /// Clause-to-variable ratio, used when --clauses is absent.
    #[arg(long, default_value_t = 4.3)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            e.exit_code()
        }
    }
}
