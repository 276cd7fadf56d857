use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use hoqiga::harness::{export_all, write_trajectory_csv};
use hoqiga::problems::{clauses_for_ratio, generate_uniform_3sat};
use hoqiga::theory::{profile_grid, write_profiles_csv};
use hoqiga::{
    rank_algorithms, run_experiment, tune, AlgorithmConfig, ExperimentPlan, Problem, ProblemSpec,
    Qiga1Config, QigaConfig, RandomSource, SgaConfig, TuningGrid, TuningSpec,
};

use crate::{Algo, BenchArgs, Command, GenArgs, MetaArgs, RunArgs, TheoryArgs};

/// Failure with its exit code: 1 for usage, 2 for runtime.
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(1),
            CliError::Runtime(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Runtime(e) => write!(f, "{e:#}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Runtime(e.into())
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(message.into()))
}

type CliResult = Result<ExitCode, CliError>;

pub fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Run(a) => run(a),
        Command::Bench(a) => bench(a),
        Command::Theory(a) => theory(a),
        Command::Meta(a) => meta(a),
        Command::Gen(a) => gen(a),
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn parse_problem(text: &str) -> Result<ProblemSpec, CliError> {
    text.parse()
        .or_else(|e| usage(format!("invalid --problem {text:?}: {e}")))
}

fn run(a: RunArgs) -> CliResult {
    let spec = parse_problem(&a.problem)?;
    if a.maxfe == 0 {
        return usage("--maxfe must be at least 1");
    }
    if a.mu.is_some() && matches!(a.algo, Algo::Qiga1 | Algo::Sga) {
        return usage("--mu applies only to qiga2 and qiga-r");
    }
    if let Some(mu) = a.mu {
        if !(mu > 0.0 && mu < 1.0) {
            return usage(format!("--mu {mu} must lie in (0, 1)"));
        }
    }
    let order = match (a.algo, a.order) {
        (Algo::QigaR, None) => return usage("qiga-r needs --order R"),
        (Algo::QigaR, Some(r)) => Some(r),
        (Algo::Qiga2, None | Some(2)) => Some(2),
        (_, Some(_)) => return usage("--order applies only to qiga-r (qiga2 is order 2)"),
        (_, None) => None,
    };
    let problem = spec.load(None)?;
    let n = problem.size();
    if let Some(r) = order {
        if r == 0 || r > n {
            return usage(format!(
                "--order {r} violates the quantum order bound 1 <= r <= N (N = {n})"
            ));
        }
    }

    let config = match a.algo {
        Algo::Qiga2 | Algo::QigaR => {
            let mut c = QigaConfig::with_order(order.unwrap_or(2));
            if let Some(mu) = a.mu {
                c = c.with_mu(mu);
            }
            AlgorithmConfig::Qiga(c)
        }
        Algo::Qiga1 => AlgorithmConfig::Qiga1(Qiga1Config::default()),
        Algo::Sga => AlgorithmConfig::Sga(SgaConfig::default()),
    }
    .with_budget(a.maxfe);
    let result = config.evolve(&problem, &mut RandomSource::new(a.seed))?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "problem: {} (N = {n})", spec.name())?;
    writeln!(out, "seed: {}", a.seed)?;
    writeln!(out, "evaluations: {}", result.evaluations)?;
    writeln!(out, "best fitness: {}", result.best_fitness)?;
    writeln!(out, "best: {}", result.best)?;
    for note in &result.notes {
        writeln!(out, "note: {note}")?;
    }
    if let Some(path) = &a.out {
        write_trajectory_csv(&result, create(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(a: BenchArgs) -> CliResult {
    if !a.plan.is_file() {
        return usage(format!("plan file {} not found", a.plan.display()));
    }
    let mut plan = match ExperimentPlan::from_path(&a.plan) {
        Ok(p) => p,
        Err(e) => return usage(format!("invalid plan {}: {e}", a.plan.display())),
    };
    if a.jobs.is_some() {
        plan.jobs = a.jobs;
    }
    let result = run_experiment(&plan)?;
    let files = export_all(&result, &a.outdir)?;

    let ranking = rank_algorithms(&result);
    let mut out = std::io::stdout().lock();
    writeln!(out, "rank  wins  tied  algorithm")?;
    for (rank, e) in ranking.ranks().iter().zip(&ranking.entries) {
        writeln!(
            out,
            "{rank:>4}  {:>4}  {:>4}  {}",
            e.wins, e.tied_wins, e.algorithm
        )?;
    }
    writeln!(out, "results written to {}", a.outdir.display())?;
    if let Some(failures) = files.failures {
        eprintln!(
            "{} cell(s) failed, see {}",
            result.failures().count(),
            failures.display()
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid --n-range {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let sizes = if let Some((lo, hi)) = text.split_once("..").or_else(|| text.split_once('-')) {
        (num(lo)?..=num(hi)?).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(bad());
    }
    Ok(sizes)
}

fn theory(a: TheoryArgs) -> CliResult {
    let sizes = parse_sizes(&a.n_range)?;
    if a.orders.is_empty() || a.orders.contains(&0) {
        return usage("--orders must be positive");
    }
    let profiles = profile_grid(sizes, &a.orders);
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{:>5} {:>3} {:>10} {:>14} {:>24}  class",
        "N", "r", "w", "log2_lambda", "lambda"
    )?;
    for p in &profiles {
        writeln!(
            out,
            "{:>5} {:>3} {:>10.6} {:>14.6} {:>24e}  {}",
            p.problem_size,
            p.order,
            p.relative_order,
            p.log2_quantum_factor,
            p.quantum_factor,
            p.class()
        )?;
    }
    if let Some(path) = &a.out {
        write_profiles_csv(&profiles, create(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn meta(a: MetaArgs) -> CliResult {
    let spec = match &a.plan {
        Some(path) => {
            if !path.is_file() {
                return usage(format!("plan file {} not found", path.display()));
            }
            match TuningSpec::from_path(path) {
                Ok(s) => s,
                Err(e) => return usage(format!("invalid plan {}: {e}", path.display())),
            }
        }
        None => {
            if a.mu.is_empty() || a.problem.is_empty() {
                return usage("meta needs --plan, or --mu and at least one --problem");
            }
            let suite = a
                .problem
                .iter()
                .map(|p| parse_problem(p))
                .collect::<Result<Vec<_>, _>>()?;
            TuningSpec {
                runs: a.runs,
                seed: a.seed,
                max_fitness_evaluations: a.maxfe,
                qiga: QigaConfig::with_order(a.order),
                jobs: a.jobs,
                ..TuningSpec::new(TuningGrid::Mu(a.mu.clone()), suite)
            }
        }
    };
    if let Err(e) = spec.validate() {
        return usage(e.to_string());
    }
    let outcome = tune(&spec)?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "{:>3} {:>12} {:>10}", "#", outcome.parameter, "score")?;
    for (i, c) in outcome.candidates.iter().enumerate() {
        let mark = if i == outcome.best_index { " *" } else { "" };
        writeln!(out, "{i:>3} {:>12} {:>10.6}{mark}", c.value, c.score)?;
    }
    writeln!(
        out,
        "selected {} = {}{}",
        outcome.parameter,
        outcome.best_value(),
        if outcome.tie { " (tie)" } else { "" }
    )?;
    if let Some(path) = &a.out {
        outcome.write_csv(create(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn gen(a: GenArgs) -> CliResult {
    if a.n < 3 {
        return usage("--n must be at least 3");
    }
    let clauses = match a.clauses {
        Some(m) => m,
        None if a.ratio > 0.0 && a.ratio.is_finite() => clauses_for_ratio(a.n, a.ratio),
        None => return usage("--ratio must be positive"),
    };
    let formula = generate_uniform_3sat(a.n, clauses, &mut RandomSource::new(a.seed))?;
    let text = format!(
        "c uniform random 3-SAT, n={} m={} seed={}\n{}",
        a.n,
        clauses,
        a.seed,
        formula.to_dimacs()
    );
    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
