//! Higher-order quantum-inspired genetic algorithms.
//!
//! Consecutive binary genes are grouped into quantum registers of order `r`.
//! Each register stores `2^r` real amplitudes whose squares form a
//! distribution over the group's bit patterns, so an order-`r` algorithm can
//! model interactions among the `r` genes it groups. The crate provides:
//!
//! - [`register`]: registers, chromosomes and observation.
//! - [`theory`]: quantum order, relative order and quantum factor.
//! - [`algorithms`]: the contraction-based order-`r` evolver, a rotation-gate
//!   order-1 baseline and a roulette-wheel GA, all on one evaluation budget.
//! - [`problems`]: DIMACS MAX-SAT fitness plus OneMax and a deceptive pair trap.
//! - [`harness`]: seeded repeated runs, aggregation, ranking, CSV/SVG export.
//! - [`metaopt`]: grid search over the contraction factor.

pub mod algorithms;
pub mod bits;
pub mod error;
pub mod harness;
pub mod metaopt;
pub mod problems;
pub mod register;
pub mod rng;
pub mod theory;

pub use algorithms::{
    contraction_update, qiga1_evolve, qiga_evolve, sga_evolve, update_quantum_population,
    AlgorithmConfig, Qiga1Config, QigaConfig, RotationTable, RunResult, SgaConfig,
};
pub use bits::BitString;
pub use error::{Error, Result};
pub use harness::{
    rank_algorithms, run_experiment, AlgorithmEntry, ExperimentPlan, ExperimentResult, RankingTable,
};
pub use metaopt::{tune, TuningGrid, TuningOutcome, TuningSpec};
pub use problems::{parse_dimacs, CnfFormula, Problem, ProblemSpec};
pub use register::{QuantumChromosome, QuantumRegister};
pub use rng::RandomSource;
pub use theory::{AlgorithmClass, OrderProfile, QuantumFactor};
