use serde::{Deserialize, Serialize};

use super::contraction::update_quantum_population;
use super::{Evaluator, RunResult, DEFAULT_MAX_FE};
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::register::QuantumChromosome;
use crate::rng::RandomSource;

/// Order-r quantum-inspired GA with the contraction update. `order = 2`
/// is the paired-gene algorithm; `order = 1` gives independent qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QigaConfig {
    pub order: usize,
    pub quantum_population_size: usize,
    /// Observations per quantum individual and generation.
    pub samples_per_individual: usize,
    #[serde(alias = "mu")]
    pub contraction_factor: f64,
    pub max_fitness_evaluations: usize,
}

impl Default for QigaConfig {
    fn default() -> Self {
        Self {
            order: 2,
            quantum_population_size: 10,
            samples_per_individual: 1,
            contraction_factor: 0.9918,
            max_fitness_evaluations: DEFAULT_MAX_FE,
        }
    }
}

impl QigaConfig {
    pub fn with_order(order: usize) -> Self {
        Self {
            order,
            ..Self::default()
        }
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self {
            contraction_factor: mu,
            ..self
        }
    }

    pub fn classical_population_size(&self) -> usize {
        self.quantum_population_size * self.samples_per_individual
    }

    /// Generations needed to spend the budget (the last may be partial).
    pub fn generations(&self) -> usize {
        self.max_fitness_evaluations
            .div_ceil(self.classical_population_size().max(1))
    }

    pub fn validate(&self) -> Result<()> {
        let mu = self.contraction_factor;
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::Config(format!(
                "contraction factor {mu} outside (0, 1)"
            )));
        }
        if self.order == 0 || self.order > crate::register::MAX_ORDER {
            return Err(Error::InvalidOrder(self.order));
        }
        if self.quantum_population_size == 0 || self.samples_per_individual == 0 {
            return Err(Error::Config("population sizes must be at least 1".into()));
        }
        if self.max_fitness_evaluations < self.classical_population_size() {
            return Err(Error::Config(format!(
                "budget {} is smaller than one generation ({})",
                self.max_fitness_evaluations,
                self.classical_population_size()
            )));
        }
        Ok(())
    }
}

/// A QIGA run that can be advanced one generation at a time.
pub struct QigaRun<'a, P: Problem + ?Sized> {
    config: QigaConfig,
    population: Vec<QuantumChromosome>,
    evaluator: Evaluator<'a, P>,
    generation: usize,
}

impl<'a, P: Problem + ?Sized> QigaRun<'a, P> {
    pub fn new(problem: &'a P, config: &QigaConfig) -> Result<Self> {
        config.validate()?;
        let n = problem.size();
        if n == 0 {
            return Err(Error::EmptyProblem);
        }
        if config.order > n {
            return Err(Error::OrderOutOfRange {
                order: config.order,
                size: n,
            });
        }
        let chrom = QuantumChromosome::uniform(n, config.order)?;
        Ok(Self {
            config: config.clone(),
            population: vec![chrom; config.quantum_population_size],
            evaluator: Evaluator::new(problem, config.max_fitness_evaluations),
            generation: 0,
        })
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn population(&self) -> &[QuantumChromosome] {
        &self.population
    }

    pub fn evaluator(&self) -> &Evaluator<'a, P> {
        &self.evaluator
    }

    pub fn is_done(&self) -> bool {
        self.evaluator.exhausted()
    }

    /// Observes and evaluates one classical population, then contracts the
    /// quantum population toward the best-so-far individual. Returns `false`
    /// once the budget is exhausted.
    pub fn step(&mut self, rng: &mut RandomSource) -> bool {
        if self.is_done() {
            return false;
        }
        self.generation += 1;
        'observe: for chrom in &self.population {
            for _ in 0..self.config.samples_per_individual {
                let x = chrom.observe(rng);
                if self.evaluator.evaluate(&x).is_none() {
                    break 'observe;
                }
            }
        }
        let best = self
            .evaluator
            .best()
            .map(|(b, _)| b.clone())
            .expect("at least one evaluation per generation");
        update_quantum_population(&mut self.population, &best, self.config.contraction_factor)
            .expect("best individual matches the chromosome layout");
        true
    }

    pub fn finish(self, seed: u64) -> RunResult {
        self.evaluator.finish(seed, Vec::new())
    }
}

pub fn qiga_evolve<P: Problem + ?Sized>(
    problem: &P,
    config: &QigaConfig,
    rng: &mut RandomSource,
) -> Result<RunResult> {
    let mut run = QigaRun::new(problem, config)?;
    while run.step(rng) {}
    Ok(run.finish(rng.seed()))
}
