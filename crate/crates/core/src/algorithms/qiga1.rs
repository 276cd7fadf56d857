//! Order-1 baseline: independent qubits `[alpha, beta]` moved by rotation
//! gates whose angle comes from a lookup table.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Evaluator, RunResult, DEFAULT_MAX_FE};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RandomSource;

/// Rotation angles in radians keyed by `(x_j, b_j, f(x) >= f(b))`.
///
/// Positive angles rotate toward `|1>`, negative toward `|0>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationTable {
    /// Indexed by `x << 2 | b << 1 | (f(x) >= f(b))`.
    angles: [f64; 8],
}

impl RotationTable {
    pub fn from_angles(angles: [f64; 8]) -> Self {
        Self { angles }
    }

    /// Zero everywhere except where the observed bit disagrees with the best
    /// bit and the observation is worse; there the qubit turns by `delta`
    /// toward the best bit.
    pub fn toward_best(delta: f64) -> Self {
        let mut table = Self { angles: [0.0; 8] };
        table.set(false, true, false, delta);
        table.set(true, false, false, -delta);
        table
    }

    fn index(x: bool, b: bool, x_not_worse: bool) -> usize {
        usize::from(x) << 2 | usize::from(b) << 1 | usize::from(x_not_worse)
    }

    pub fn angle(&self, x: bool, b: bool, x_not_worse: bool) -> f64 {
        self.angles[Self::index(x, b, x_not_worse)]
    }

    pub fn set(&mut self, x: bool, b: bool, x_not_worse: bool, angle: f64) {
        self.angles[Self::index(x, b, x_not_worse)] = angle;
    }

    pub fn angles(&self) -> &[f64; 8] {
        &self.angles
    }
}

impl Default for RotationTable {
    fn default() -> Self {
        Self::toward_best(0.01 * PI)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Qiga1Config {
    pub rotation_table: RotationTable,
    /// Lower bound on `|alpha|` and `|beta|`.
    pub epsilon_guard: f64,
    pub quantum_population_size: usize,
    pub max_fitness_evaluations: usize,
}

impl Default for Qiga1Config {
    fn default() -> Self {
        Self {
            rotation_table: RotationTable::default(),
            epsilon_guard: 0.01,
            quantum_population_size: 10,
            max_fitness_evaluations: DEFAULT_MAX_FE,
        }
    }
}

impl Qiga1Config {
    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self
            .rotation_table
            .angles()
            .iter()
            .find(|a| !(a.abs() < PI / 2.0))
        {
            return Err(Error::Config(format!(
                "rotation angle {a} outside (-pi/2, pi/2)"
            )));
        }
        if !(0.0..0.3).contains(&self.epsilon_guard) {
            return Err(Error::Config(format!(
                "epsilon guard {} outside [0, 0.3)",
                self.epsilon_guard
            )));
        }
        if self.quantum_population_size == 0 {
            return Err(Error::Config("population size must be at least 1".into()));
        }
        if self.max_fitness_evaluations < self.quantum_population_size {
            return Err(Error::Config(format!(
                "budget {} is smaller than one generation ({})",
                self.max_fitness_evaluations, self.quantum_population_size
            )));
        }
        Ok(())
    }
}

/// Applies `[[cos, -sin], [sin, cos]]` to `(alpha, beta)`, then keeps both
/// amplitudes in `[epsilon, 1]` so the qubit stays in the first quadrant.
pub fn rotate_qubit(qubit: (f64, f64), angle: f64, epsilon: f64) -> (f64, f64) {
    let (alpha, beta) = qubit;
    let (sin, cos) = angle.sin_cos();
    let rotated = (cos * alpha - sin * beta, sin * alpha + cos * beta);
    let floor = epsilon;
    let ceil = (1.0 - epsilon * epsilon).sqrt();
    if rotated.0 < floor {
        (floor, ceil)
    } else if rotated.1 < floor {
        (ceil, floor)
    } else {
        rotated
    }
}

pub fn qiga1_evolve<P: Problem + ?Sized>(
    problem: &P,
    config: &Qiga1Config,
    rng: &mut RandomSource,
) -> Result<RunResult> {
    config.validate()?;
    let n = problem.size();
    if n == 0 {
        return Err(Error::EmptyProblem);
    }
    let uniform = std::f64::consts::FRAC_1_SQRT_2;
    let mut population = vec![vec![(uniform, uniform); n]; config.quantum_population_size];
    let mut evaluator = Evaluator::new(problem, config.max_fitness_evaluations);
    let mut observed: Vec<(BitString, f64)> = Vec::with_capacity(population.len());

    while !evaluator.exhausted() {
        observed.clear();
        for qubits in &population {
            // same cumulative scan as a register: 0 when u < alpha^2
            let x: BitString = qubits
                .iter()
                .map(|&(alpha, _)| rng.uniform() >= alpha * alpha)
                .collect();
            match evaluator.evaluate(&x) {
                Some(f) => observed.push((x, f)),
                None => break,
            }
        }
        let (best, best_fitness) = evaluator
            .best()
            .map(|(b, f)| (b.clone(), f))
            .expect("at least one evaluation per generation");
        for (qubits, (x, f)) in population.iter_mut().zip(&observed) {
            let not_worse = *f >= best_fitness;
            for (j, qubit) in qubits.iter_mut().enumerate() {
                let angle = config
                    .rotation_table
                    .angle(x.get(j), best.get(j), not_worse);
                if angle != 0.0 {
                    *qubit = rotate_qubit(*qubit, angle, config.epsilon_guard);
                }
            }
        }
    }
    Ok(evaluator.finish(rng.seed(), Vec::new()))
}
