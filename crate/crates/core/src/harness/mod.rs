//! Repeated seeded runs over a grid of problems and algorithms.
//!
//! Every cell (problem x algorithm) runs `runs_per_cell` times with seeds
//! `base_seed + run_index` on the same fitness-evaluation budget. Runs may
//! execute in parallel; results are collected in plan order, so the output
//! never depends on scheduling.

mod export;
mod rank;
mod svg;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmConfig, RunResult, DEFAULT_MAX_FE};
use crate::error::{Error, Result};
use crate::problems::{Problem, ProblemSpec};
use crate::rng::RandomSource;

pub use export::{
    export_all, write_ranking_csv, write_runs_csv, write_summary_csv, write_trajectory_csv,
    ExportedFiles,
};
pub use rank::{rank_algorithms, RankEntry, RankingTable};
pub use svg::render_convergence_svg;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    pub id: String,
    #[serde(flatten)]
    pub config: AlgorithmConfig,
}

impl AlgorithmEntry {
    pub fn new(id: impl Into<String>, config: AlgorithmConfig) -> Self {
        Self {
            id: id.into(),
            config,
        }
    }
}

fn default_runs() -> usize {
    50
}

fn default_max_fe() -> usize {
    DEFAULT_MAX_FE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub problems: Vec<ProblemSpec>,
    pub algorithms: Vec<AlgorithmEntry>,
    #[serde(default = "default_runs", alias = "runs")]
    pub runs_per_cell: usize,
    #[serde(default, alias = "seed")]
    pub base_seed: u64,
    #[serde(default = "default_max_fe", alias = "max_fe")]
    pub max_fitness_evaluations: usize,
    /// Worker threads; `None` uses every core.
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Directory that relative problem paths resolve against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl ExperimentPlan {
    pub fn new(problems: Vec<ProblemSpec>, algorithms: Vec<AlgorithmEntry>) -> Self {
        Self {
            problems,
            algorithms,
            runs_per_cell: default_runs(),
            base_seed: 0,
            max_fitness_evaluations: DEFAULT_MAX_FE,
            jobs: None,
            base_dir: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a TOML plan; relative problem paths resolve against its folder.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut plan = Self::from_toml_str(&text)?;
        plan.base_dir = path.parent().map(Path::to_path_buf);
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs_per_cell == 0 {
            return Err(Error::Config("runs_per_cell must be at least 1".into()));
        }
        if self.problems.is_empty() || self.algorithms.is_empty() {
            return Err(Error::Config(
                "plan needs at least one problem and one algorithm".into(),
            ));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        let mut ids: Vec<&str> = self.algorithms.iter().map(|a| a.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate algorithm id {:?}", w[0])));
        }
        for entry in &self.algorithms {
            entry
                .config
                .with_budget(self.max_fitness_evaluations)
                .validate()
                .map_err(|e| Error::Config(format!("algorithm {:?}: {e}", entry.id)))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (n - 1); 0 for a single run.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self {
            mean,
            std: var.sqrt(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CellStatus {
    Completed {
        runs: Vec<RunResult>,
        summary: Summary,
        /// Mean over runs of the best-so-far value after each evaluation.
        mean_trajectory: Vec<f64>,
    },
    Failed {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub problem_index: usize,
    pub problem: String,
    /// Problem size, 0 when the problem failed to load.
    pub size_n: usize,
    pub algorithm: String,
    pub status: CellStatus,
}

impl CellResult {
    pub fn runs(&self) -> &[RunResult] {
        match &self.status {
            CellStatus::Completed { runs, .. } => runs,
            CellStatus::Failed { .. } => &[],
        }
    }

    pub fn summary(&self) -> Option<&Summary> {
        match &self.status {
            CellStatus::Completed { summary, .. } => Some(summary),
            CellStatus::Failed { .. } => None,
        }
    }

    pub fn mean_trajectory(&self) -> Option<&[f64]> {
        match &self.status {
            CellStatus::Completed {
                mean_trajectory, ..
            } => Some(mean_trajectory),
            CellStatus::Failed { .. } => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self.status, CellStatus::Failed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub max_fitness_evaluations: usize,
    pub base_seed: u64,
    /// Algorithm ids in plan order.
    pub algorithms: Vec<String>,
    /// Problem names in plan order.
    pub problems: Vec<String>,
    /// Problem-major, algorithm-minor.
    pub cells: Vec<CellResult>,
}

impl ExperimentResult {
    pub fn failures(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter(|c| c.is_failed())
    }

    pub fn cell(&self, problem_index: usize, algorithm: &str) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.problem_index == problem_index && c.algorithm == algorithm)
    }
}

fn build_cell(
    problem_index: usize,
    problem: String,
    size_n: usize,
    algorithm: String,
    outcomes: Vec<Result<RunResult>>,
) -> CellResult {
    let status = match outcomes.into_iter().collect::<Result<Vec<_>>>() {
        Err(e) => CellStatus::Failed {
            reason: e.to_string(),
        },
        Ok(runs) => {
            let bests: Vec<f64> = runs.iter().map(|r| r.best_fitness).collect();
            let len = runs.iter().map(|r| r.trajectory.len()).max().unwrap_or(0);
            let mut mean_trajectory = vec![0.0; len];
            for run in &runs {
                for (acc, v) in mean_trajectory.iter_mut().zip(&run.trajectory) {
                    *acc += v;
                }
            }
            let n = runs.len() as f64;
            mean_trajectory.iter_mut().for_each(|v| *v /= n);
            CellStatus::Completed {
                summary: Summary::of(&bests),
                mean_trajectory,
                runs,
            }
        }
    };
    CellResult {
        problem_index,
        problem,
        size_n,
        algorithm,
        status,
    }
}

/// Executes every cell of the plan. A problem that fails to load, or a
/// run that errors, marks its cell failed; the rest of the plan proceeds.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentResult> {
    plan.validate()?;
    let loaded: Vec<std::result::Result<Arc<dyn Problem>, String>> = plan
        .problems
        .iter()
        .map(|spec| {
            spec.load(plan.base_dir.as_deref()).map_err(|e| {
                warn!("problem {spec} failed to load: {e}");
                e.to_string()
            })
        })
        .collect();
    let configs: Vec<AlgorithmConfig> = plan
        .algorithms
        .iter()
        .map(|a| a.config.with_budget(plan.max_fitness_evaluations))
        .collect();

    // one task per (problem, algorithm, run) for loaded problems
    let tasks: Vec<(usize, usize, usize)> = loaded
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_ok())
        .flat_map(|(p, _)| {
            (0..configs.len()).flat_map(move |a| (0..plan.runs_per_cell).map(move |r| (p, a, r)))
        })
        .collect();
    let execute = || -> Vec<Result<RunResult>> {
        tasks
            .par_iter()
            .map(|&(p, a, r)| {
                let problem = loaded[p]
                    .as_ref()
                    .expect("only loaded problems are scheduled");
                let seed = plan.base_seed.wrapping_add(r as u64);
                configs[a].evolve(problem.as_ref(), &mut RandomSource::new(seed))
            })
            .collect()
    };
    let outcomes = match plan.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(execute),
        None => execute(),
    };

    let mut outcomes = outcomes.into_iter();
    let mut cells = Vec::with_capacity(plan.problems.len() * plan.algorithms.len());
    for (p, (spec, problem)) in plan.problems.iter().zip(&loaded).enumerate() {
        for entry in &plan.algorithms {
            let cell = match problem {
                Ok(problem) => build_cell(
                    p,
                    spec.name(),
                    problem.size(),
                    entry.id.clone(),
                    outcomes.by_ref().take(plan.runs_per_cell).collect(),
                ),
                Err(reason) => CellResult {
                    problem_index: p,
                    problem: spec.name(),
                    size_n: 0,
                    algorithm: entry.id.clone(),
                    status: CellStatus::Failed {
                        reason: reason.clone(),
                    },
                },
            };
            cells.push(cell);
        }
    }
    Ok(ExperimentResult {
        max_fitness_evaluations: plan.max_fitness_evaluations,
        base_seed: plan.base_seed,
        algorithms: plan.algorithms.iter().map(|a| a.id.clone()).collect(),
        problems: plan.problems.iter().map(ProblemSpec::name).collect(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{QigaConfig, SgaConfig};

    fn small_plan() -> ExperimentPlan {
        ExperimentPlan {
            runs_per_cell: 3,
            max_fitness_evaluations: 400,
            ..ExperimentPlan::new(
                vec![ProblemSpec::Constant(6), ProblemSpec::Trap(4)],
                vec![
                    AlgorithmEntry::new("QIGA2", AlgorithmConfig::Qiga(QigaConfig::default())),
                    AlgorithmEntry::new("SGA", AlgorithmConfig::Sga(SgaConfig::default())),
                ],
            )
        }
    }

    #[test]
    fn constant_problem_has_zero_spread() {
        let result = run_experiment(&small_plan()).unwrap();
        let cell = result.cell(0, "QIGA2").unwrap();
        assert_eq!(cell.runs().len(), 3);
        let s = cell.summary().unwrap();
        assert_eq!((s.mean, s.std, s.min, s.max), (1.0, 0.0, 1.0, 1.0));
    }

    #[test]
    fn repeatable_and_schedule_independent() {
        let plan = small_plan();
        let a = run_experiment(&plan).unwrap();
        let b = run_experiment(&ExperimentPlan {
            jobs: Some(1),
            ..plan.clone()
        })
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budgets_and_aggregates_are_consistent() {
        let result = run_experiment(&small_plan()).unwrap();
        assert_eq!(result.cells.len(), 4);
        for cell in &result.cells {
            let runs = cell.runs();
            for (i, run) in runs.iter().enumerate() {
                assert_eq!(run.evaluations, 400);
                assert_eq!(run.trajectory.len(), 400);
                assert_eq!(run.seed, i as u64);
            }
            let mean = runs.iter().map(|r| r.best_fitness).sum::<f64>() / runs.len() as f64;
            let summary = cell.summary().unwrap();
            assert!((summary.mean - mean).abs() <= 1e-9);
            let traj = cell.mean_trajectory().unwrap();
            assert_eq!(traj.len(), 400);
            assert!((traj[399] - summary.mean).abs() <= 1e-9);
        }
    }

    #[test]
    fn missing_file_fails_only_its_cells() {
        let mut plan = small_plan();
        plan.problems.push("does/not/exist.cnf".parse().unwrap());
        let result = run_experiment(&plan).unwrap();
        assert_eq!(result.failures().count(), 2);
        assert!(result.cells.iter().take(4).all(|c| !c.is_failed()));
    }

    #[test]
    fn run_errors_fail_the_cell() {
        let mut plan = small_plan();
        plan.algorithms.push(AlgorithmEntry::new(
            "wide",
            AlgorithmConfig::Qiga(QigaConfig::with_order(9)),
        ));
        let result = run_experiment(&plan).unwrap();
        let failed: Vec<_> = result
            .failures()
            .map(|c| (c.problem_index, c.algorithm.as_str()))
            .collect();
        assert_eq!(failed, [(0, "wide"), (1, "wide")]);
    }

    #[test]
    fn validation() {
        let mut plan = small_plan();
        plan.runs_per_cell = 0;
        assert!(run_experiment(&plan).is_err());
        let mut plan = small_plan();
        plan.algorithms[1].id = "QIGA2".into();
        assert!(plan.validate().is_err());
        let mut plan = small_plan();
        plan.max_fitness_evaluations = 5;
        assert!(plan.validate().is_err());
    }

    #[test]
    fn plan_from_toml() {
        let plan = ExperimentPlan::from_toml_str(
            r#"
            runs = 4
            seed = 17
            max_fe = 1000
            problems = ["trap:24", "onemax:48", "3sat:48:206:1"]

            [[algorithms]]
            id = "QIGA2"
            kind = "qiga"
            mu = 0.99

            [[algorithms]]
            id = "QIGA1"
            kind = "qiga1"

            [[algorithms]]
            id = "SGA"
            kind = "sga"
            crossover_probability = 0.7
            "#,
        )
        .unwrap();
        assert_eq!(plan.runs_per_cell, 4);
        assert_eq!(plan.base_seed, 17);
        assert_eq!(plan.problems[0], ProblemSpec::Trap(24));
        match &plan.algorithms[0].config {
            AlgorithmConfig::Qiga(c) => {
                assert_eq!(c.contraction_factor, 0.99);
                assert_eq!(c.order, 2);
            }
            other => panic!("{other:?}"),
        }
        match &plan.algorithms[2].config {
            AlgorithmConfig::Sga(c) => assert_eq!(c.crossover_probability, 0.7),
            other => panic!("{other:?}"),
        }
        assert!(plan.validate().is_ok());
    }

    #[test]
    fn plan_rejects_unknown_algorithm_fields() {
        let err = ExperimentPlan::from_toml_str(
            r#"
            problems = ["trap:2"]
            [[algorithms]]
            id = "x"
            kind = "qiga"
            muu = 0.5
            "#,
        );
        assert!(err.is_err());
    }
}
