//! Grid search over the contraction factor (or the QIGA1 rotation angle).
//!
//! Each candidate is run on every suite problem through the harness. Mean
//! best fitness is min-max normalized per problem across candidates, so a
//! large problem cannot dominate, and the candidate with the highest mean
//! normalized score wins.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmConfig, Qiga1Config, QigaConfig, RotationTable, DEFAULT_MAX_FE};
use crate::error::{Error, Result};
use crate::harness::{run_experiment, AlgorithmEntry, ExperimentPlan};
use crate::problems::ProblemSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "parameter", content = "values", rename_all = "snake_case")]
pub enum TuningGrid {
    /// Contraction factors for the order-r algorithm.
    Mu(Vec<f64>),
    /// Magnitudes for [`RotationTable::toward_best`].
    Qiga1Angle(Vec<f64>),
}

impl TuningGrid {
    pub fn values(&self) -> &[f64] {
        match self {
            TuningGrid::Mu(v) | TuningGrid::Qiga1Angle(v) => v,
        }
    }

    pub fn parameter(&self) -> &'static str {
        match self {
            TuningGrid::Mu(_) => "mu",
            TuningGrid::Qiga1Angle(_) => "qiga1_angle",
        }
    }
}

fn default_runs() -> usize {
    20
}

fn default_max_fe() -> usize {
    DEFAULT_MAX_FE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningSpec {
    #[serde(flatten)]
    pub grid: TuningGrid,
    #[serde(alias = "problems")]
    pub suite: Vec<ProblemSpec>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_fe", alias = "max_fe")]
    pub max_fitness_evaluations: usize,
    /// Settings shared by every `mu` candidate (order, population size).
    #[serde(default)]
    pub qiga: QigaConfig,
    #[serde(default)]
    pub jobs: Option<usize>,
}

#[derive(Deserialize)]
struct TuningFile {
    tuning: TuningSpec,
}

impl TuningSpec {
    pub fn new(grid: TuningGrid, suite: Vec<ProblemSpec>) -> Self {
        Self {
            grid,
            suite,
            runs: default_runs(),
            seed: 0,
            max_fitness_evaluations: DEFAULT_MAX_FE,
            qiga: QigaConfig::default(),
            jobs: None,
        }
    }

    /// Reads the `[tuning]` section of a TOML document.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str::<TuningFile>(text)
            .map(|f| f.tuning)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.suite.is_empty() {
            return Err(Error::EmptySuite);
        }
        let values = self.grid.values();
        if values.is_empty() {
            return Err(Error::Config("tuning grid is empty".into()));
        }
        let upper = match self.grid {
            TuningGrid::Mu(_) => 1.0,
            TuningGrid::Qiga1Angle(_) => std::f64::consts::FRAC_PI_2,
        };
        if let Some(v) = values.iter().find(|v| !(**v > 0.0 && **v < upper)) {
            return Err(Error::Config(format!(
                "{} candidate {v} outside (0, {upper})",
                self.grid.parameter()
            )));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        Ok(())
    }

    fn candidate(&self, value: f64) -> AlgorithmConfig {
        match self.grid {
            TuningGrid::Mu(_) => AlgorithmConfig::Qiga(self.qiga.clone().with_mu(value)),
            TuningGrid::Qiga1Angle(_) => AlgorithmConfig::Qiga1(Qiga1Config {
                rotation_table: RotationTable::toward_best(value),
                ..Qiga1Config::default()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScore {
    pub value: f64,
    /// Mean best fitness per suite problem.
    pub means: Vec<f64>,
    /// Per-problem min-max normalized means.
    pub normalized: Vec<f64>,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningOutcome {
    pub parameter: String,
    pub problems: Vec<String>,
    pub candidates: Vec<CandidateScore>,
    pub best_index: usize,
    /// Another candidate reached the same score.
    pub tie: bool,
}

impl TuningOutcome {
    pub fn best_value(&self) -> f64 {
        self.candidates[self.best_index].value
    }

    /// `candidate,parameter,value,mean:<p>...,norm:<p>...,score,selected`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["candidate".to_string(), "parameter".into(), "value".into()];
        header.extend(self.problems.iter().map(|p| format!("mean:{p}")));
        header.extend(self.problems.iter().map(|p| format!("norm:{p}")));
        header.extend(["score".into(), "selected".into()]);
        w.write_record(&header)?;
        for (i, c) in self.candidates.iter().enumerate() {
            let mut row = vec![i.to_string(), self.parameter.clone(), c.value.to_string()];
            row.extend(c.means.iter().map(f64::to_string));
            row.extend(c.normalized.iter().map(f64::to_string));
            row.push(c.score.to_string());
            row.push(u8::from(i == self.best_index).to_string());
            w.write_record(&row)?;
        }
        w.into_inner()
            .map_err(|e| Error::io("<csv>", e.into_error()))?
            .flush()
            .map_err(|e| Error::io("<csv>", e))
    }
}

pub fn tune(spec: &TuningSpec) -> Result<TuningOutcome> {
    spec.validate()?;
    let values = spec.grid.values();
    let algorithms = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            AlgorithmEntry::new(
                format!("c{i}:{}={v}", spec.grid.parameter()),
                spec.candidate(v),
            )
        })
        .collect();
    let plan = ExperimentPlan {
        runs_per_cell: spec.runs,
        base_seed: spec.seed,
        max_fitness_evaluations: spec.max_fitness_evaluations,
        jobs: spec.jobs,
        ..ExperimentPlan::new(spec.suite.clone(), algorithms)
    };
    let result = run_experiment(&plan)?;
    if let Some(failed) = result.failures().next() {
        return Err(Error::Config(format!(
            "tuning cell {} / {} failed",
            failed.problem, failed.algorithm
        )));
    }

    // means[candidate][problem]
    let means: Vec<Vec<f64>> = plan
        .algorithms
        .iter()
        .map(|a| {
            (0..spec.suite.len())
                .map(|p| {
                    result
                        .cell(p, &a.id)
                        .and_then(|c| c.summary())
                        .map(|s| s.mean)
                        .expect("completed cell")
                })
                .collect()
        })
        .collect();
    let mut normalized = vec![vec![0.0; spec.suite.len()]; values.len()];
    for p in 0..spec.suite.len() {
        let column = means.iter().map(|m| m[p]);
        let lo = column.clone().fold(f64::INFINITY, f64::min);
        let hi = column.fold(f64::NEG_INFINITY, f64::max);
        for (c, m) in means.iter().enumerate() {
            normalized[c][p] = if hi > lo {
                (m[p] - lo) / (hi - lo)
            } else {
                1.0
            };
        }
    }
    let candidates: Vec<CandidateScore> = values
        .iter()
        .zip(means)
        .zip(normalized)
        .map(|((&value, means), normalized)| CandidateScore {
            value,
            score: normalized.iter().sum::<f64>() / normalized.len() as f64,
            means,
            normalized,
        })
        .collect();

    let top = candidates
        .iter()
        .map(|c| c.score)
        .fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].score == top)
        .collect();
    // smallest value among the tied, earliest index on equal values
    let best_index = tied
        .iter()
        .copied()
        .min_by(|&a, &b| {
            candidates[a]
                .value
                .total_cmp(&candidates[b].value)
                .then(a.cmp(&b))
        })
        .expect("grid is non-empty");

    Ok(TuningOutcome {
        parameter: spec.grid.parameter().into(),
        problems: result.problems,
        candidates,
        best_index,
        tie: tied.len() > 1,
    })
}
