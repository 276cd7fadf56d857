//! Evolvers sharing one budgeted evaluation loop: the order-r contraction
//! algorithm, the rotation-gate order-1 baseline, and a simple GA.

mod contraction;
mod qiga;
mod qiga1;
mod sga;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::Result;
use crate::problems::Problem;
use crate::rng::RandomSource;

pub use contraction::{contraction_update, update_quantum_population};
pub use qiga::{qiga_evolve, QigaConfig, QigaRun};
pub use qiga1::{qiga1_evolve, rotate_qubit, Qiga1Config, RotationTable};
pub use sga::{sga_evolve, single_point_crossover, SgaConfig};

/// Default fitness-evaluation budget shared by every evolver.
pub const DEFAULT_MAX_FE: usize = 5000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub best: BitString,
    pub best_fitness: f64,
    /// Best-so-far fitness after each evaluation; `trajectory[i]` is the
    /// value after `i + 1` evaluations.
    pub trajectory: Vec<f64>,
    pub evaluations: usize,
    /// Non-fatal events such as selection fallbacks.
    pub notes: Vec<String>,
}

/// Counts evaluations against the budget and tracks the best-so-far
/// individual. Ties keep the earliest individual.
pub struct Evaluator<'a, P: Problem + ?Sized> {
    problem: &'a P,
    budget: usize,
    best: Option<(BitString, f64)>,
    trajectory: Vec<f64>,
}

impl<'a, P: Problem + ?Sized> Evaluator<'a, P> {
    pub fn new(problem: &'a P, budget: usize) -> Self {
        Self {
            problem,
            budget,
            best: None,
            trajectory: Vec::with_capacity(budget),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.trajectory.len()
    }

    pub fn remaining(&self) -> usize {
        self.budget - self.trajectory.len()
    }

    pub fn exhausted(&self) -> bool {
        self.remaining() == 0
    }

    /// Evaluates `bits`, or returns `None` once the budget is spent.
    pub fn evaluate(&mut self, bits: &BitString) -> Option<f64> {
        if self.exhausted() {
            return None;
        }
        let f = self.problem.evaluate(bits.as_slice());
        match &self.best {
            Some((_, best)) if f <= *best => {}
            _ => self.best = Some((bits.clone(), f)),
        }
        self.trajectory
            .push(self.best.as_ref().map_or(f, |(_, b)| *b));
        Some(f)
    }

    pub fn best(&self) -> Option<(&BitString, f64)> {
        self.best.as_ref().map(|(b, f)| (b, *f))
    }

    pub fn finish(self, seed: u64, notes: Vec<String>) -> RunResult {
        let (best, best_fitness) = self
            .best
            .expect("an evolver performs at least one evaluation");
        RunResult {
            seed,
            best,
            best_fitness,
            evaluations: self.trajectory.len(),
            trajectory: self.trajectory,
            notes,
        }
    }
}

/// Any of the evolvers with its configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgorithmConfig {
    Qiga(QigaConfig),
    Qiga1(Qiga1Config),
    Sga(SgaConfig),
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Qiga(c) => c.validate(),
            AlgorithmConfig::Qiga1(c) => c.validate(),
            AlgorithmConfig::Sga(c) => c.validate(),
        }
    }

    /// Same configuration with the fitness-evaluation budget replaced.
    pub fn with_budget(&self, max_fe: usize) -> Self {
        match self {
            AlgorithmConfig::Qiga(c) => AlgorithmConfig::Qiga(QigaConfig {
                max_fitness_evaluations: max_fe,
                ..c.clone()
            }),
            AlgorithmConfig::Qiga1(c) => AlgorithmConfig::Qiga1(Qiga1Config {
                max_fitness_evaluations: max_fe,
                ..c.clone()
            }),
            AlgorithmConfig::Sga(c) => AlgorithmConfig::Sga(c.with_budget(max_fe)),
        }
    }

    pub fn budget(&self) -> usize {
        match self {
            AlgorithmConfig::Qiga(c) => c.max_fitness_evaluations,
            AlgorithmConfig::Qiga1(c) => c.max_fitness_evaluations,
            AlgorithmConfig::Sga(c) => c.budget(),
        }
    }

    pub fn evolve<P: Problem + ?Sized>(
        &self,
        problem: &P,
        rng: &mut RandomSource,
    ) -> Result<RunResult> {
        match self {
            AlgorithmConfig::Qiga(c) => qiga_evolve(problem, c, rng),
            AlgorithmConfig::Qiga1(c) => qiga1_evolve(problem, c, rng),
            AlgorithmConfig::Sga(c) => sga_evolve(problem, c, rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{onemax, Constant};

    #[test]
    fn evaluator_enforces_budget_and_keeps_first_best() {
        let p = Constant {
            size: 3,
            value: 2.0,
        };
        let mut ev = Evaluator::new(&p, 2);
        let first: BitString = "101".parse().unwrap();
        assert_eq!(ev.evaluate(&first), Some(2.0));
        assert_eq!(ev.evaluate(&"111".parse().unwrap()), Some(2.0));
        assert_eq!(ev.evaluate(&first), None);
        let run = ev.finish(0, Vec::new());
        assert_eq!(run.best, first);
        assert_eq!(run.trajectory, [2.0, 2.0]);
    }

    #[test]
    fn evaluator_trajectory_is_running_max() {
        let p = onemax(3);
        let mut ev = Evaluator::new(&p, 10);
        for s in ["010", "000", "111", "011"] {
            ev.evaluate(&s.parse().unwrap());
        }
        assert_eq!(ev.finish(0, Vec::new()).trajectory, [1.0, 1.0, 3.0, 3.0]);
    }

    #[test]
    fn with_budget_sets_every_kind() {
        for cfg in [
            AlgorithmConfig::Qiga(QigaConfig::default()),
            AlgorithmConfig::Qiga1(Qiga1Config::default()),
            AlgorithmConfig::Sga(SgaConfig::default()),
        ] {
            assert_eq!(cfg.budget(), DEFAULT_MAX_FE);
            assert_eq!(cfg.with_budget(1234).budget(), 1234);
        }
    }
}
