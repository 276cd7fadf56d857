//! Generational GA: roulette-wheel selection, single-point crossover,
//! per-bit mutation, full replacement.

use log::debug;
use serde::{Deserialize, Serialize};

use super::{Evaluator, RunResult};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SgaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    /// Evaluation cap; `None` means `population_size * generations`.
    pub max_fitness_evaluations: Option<usize>,
}

impl Default for SgaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 50,
            crossover_probability: 0.65,
            mutation_probability: 0.05,
            max_fitness_evaluations: None,
        }
    }
}

impl SgaConfig {
    pub fn budget(&self) -> usize {
        self.max_fitness_evaluations
            .unwrap_or(self.population_size * self.generations)
    }

    /// Enough generations to spend exactly `max_fe` evaluations.
    pub fn with_budget(&self, max_fe: usize) -> Self {
        Self {
            generations: max_fe.div_ceil(self.population_size.max(1)),
            max_fitness_evaluations: Some(max_fe),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("crossover", self.crossover_probability),
            ("mutation", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!(
                    "{name} probability {p} outside [0, 1]"
                )));
            }
        }
        if self.population_size == 0 || !self.population_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population size {} must be positive and even",
                self.population_size
            )));
        }
        if self.generations == 0 {
            return Err(Error::Config("at least one generation is required".into()));
        }
        if self.budget() > self.population_size * self.generations {
            return Err(Error::Config(format!(
                "budget {} exceeds {} generations of {}",
                self.budget(),
                self.generations,
                self.population_size
            )));
        }
        if self.budget() == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        Ok(())
    }
}

/// Swaps tails after `cut`: children are `a[..cut] + b[cut..]` and
/// `b[..cut] + a[cut..]`.
pub fn single_point_crossover(a: &BitString, b: &BitString, cut: usize) -> (BitString, BitString) {
    let first = a.iter().take(cut).chain(b.iter().skip(cut)).collect();
    let second = b.iter().take(cut).chain(a.iter().skip(cut)).collect();
    (first, second)
}

struct Roulette {
    cumulative: Vec<f64>,
}

impl Roulette {
    /// Builds the wheel, shifting negative fitness and falling back to
    /// uniform selection when all weights vanish. Returns a note for either.
    fn new(fitness: &[f64]) -> (Self, Option<String>) {
        let min = fitness.iter().copied().fold(f64::INFINITY, f64::min);
        let (shift, mut note) = if min < 0.0 {
            (
                -min + 1.0,
                Some(format!("negative fitness: shifted by {}", -min + 1.0)),
            )
        } else {
            (0.0, None)
        };
        let mut total = 0.0;
        let mut cumulative: Vec<f64> = fitness
            .iter()
            .map(|f| {
                total += f + shift;
                total
            })
            .collect();
        if !(total > 0.0) || !total.is_finite() {
            note = Some("all-zero fitness: uniform selection".into());
            cumulative = (1..=fitness.len()).map(|i| i as f64).collect();
        }
        (Self { cumulative }, note)
    }

    fn spin(&self, rng: &mut RandomSource) -> usize {
        let total = *self.cumulative.last().expect("non-empty population");
        let target = rng.uniform() * total;
        self.cumulative
            .partition_point(|&c| c <= target)
            .min(self.cumulative.len() - 1)
    }
}

pub fn sga_evolve<P: Problem + ?Sized>(
    problem: &P,
    config: &SgaConfig,
    rng: &mut RandomSource,
) -> Result<RunResult> {
    config.validate()?;
    let n = problem.size();
    if n == 0 {
        return Err(Error::EmptyProblem);
    }
    let mut evaluator = Evaluator::new(problem, config.budget());
    let mut notes = Vec::new();

    let mut population: Vec<BitString> = (0..config.population_size)
        .map(|_| (0..n).map(|_| rng.chance(0.5)).collect())
        .collect();
    let mut fitness: Vec<f64> = Vec::with_capacity(config.population_size);
    for x in &population {
        match evaluator.evaluate(x) {
            Some(f) => fitness.push(f),
            None => break,
        }
    }

    let mut generation = 1;
    while !evaluator.exhausted() {
        generation += 1;
        let (wheel, note) = Roulette::new(&fitness);
        if let Some(note) = note {
            debug!("generation {generation}: {note}");
            notes.push(format!("generation {generation}: {note}"));
        }
        let mut offspring = Vec::with_capacity(config.population_size);
        while offspring.len() < config.population_size {
            let a = &population[wheel.spin(rng)];
            let b = &population[wheel.spin(rng)];
            let (mut c, mut d) = if n >= 2 && rng.chance(config.crossover_probability) {
                single_point_crossover(a, b, rng.below(1, n))
            } else {
                (a.clone(), b.clone())
            };
            for child in [&mut c, &mut d] {
                for j in 0..n {
                    if rng.chance(config.mutation_probability) {
                        child.flip(j);
                    }
                }
            }
            offspring.push(c);
            offspring.push(d);
        }
        fitness.clear();
        for x in &offspring {
            match evaluator.evaluate(x) {
                Some(f) => fitness.push(f),
                None => break,
            }
        }
        offspring.truncate(fitness.len());
        population = offspring;
    }
    Ok(evaluator.finish(rng.seed(), notes))
}
