//! Fixtures shared by the criterion benches in `benches/`.

use hoqiga::problems::{clauses_for_ratio, generate_uniform_3sat, pair_trap, PairTrap};
use hoqiga::{AlgorithmConfig, CnfFormula, Qiga1Config, QigaConfig, RandomSource, SgaConfig};

/// Uniform random 3-SAT at clause ratio 4.3, fixed seed.
pub fn three_sat(variables: usize) -> CnfFormula {
    generate_uniform_3sat(
        variables,
        clauses_for_ratio(variables, 4.3),
        &mut RandomSource::new(variables as u64),
    )
    .expect("at least 3 variables")
}

pub fn trap(pairs: usize) -> PairTrap {
    pair_trap(pairs)
}

/// The compared evolvers at their default settings.
pub fn evolvers() -> Vec<(&'static str, AlgorithmConfig)> {
    vec![
        ("qiga2", AlgorithmConfig::Qiga(QigaConfig::default())),
        (
            "qiga-order1",
            AlgorithmConfig::Qiga(QigaConfig::with_order(1)),
        ),
        (
            "qiga-order4",
            AlgorithmConfig::Qiga(QigaConfig::with_order(4)),
        ),
        ("qiga1", AlgorithmConfig::Qiga1(Qiga1Config::default())),
        ("sga", AlgorithmConfig::Sga(SgaConfig::default())),
    ]
}
