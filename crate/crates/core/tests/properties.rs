use hoqiga::problems::{onemax, pair_trap};
use hoqiga::{AlgorithmConfig, Problem, Qiga1Config, QigaConfig, RandomSource, SgaConfig};
use proptest::prelude::*;

fn configs(budget: usize) -> Vec<AlgorithmConfig> {
    vec![
        AlgorithmConfig::Qiga(QigaConfig::default()),
        AlgorithmConfig::Qiga(QigaConfig::with_order(3)),
        AlgorithmConfig::Qiga1(Qiga1Config::default()),
        AlgorithmConfig::Sga(SgaConfig::default()),
    ]
    .into_iter()
    .map(|c| c.with_budget(budget))
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn budget_is_spent_exactly(budget in 10usize..700, n in 3usize..20, seed in any::<u64>()) {
        let problem = onemax(n);
        for config in configs(budget) {
            let run = config.evolve(&problem, &mut RandomSource::new(seed)).unwrap();
            prop_assert_eq!(run.evaluations, budget);
            prop_assert_eq!(run.trajectory.len(), budget);
        }
    }

    #[test]
    fn trajectory_is_monotone_and_ends_at_best(pairs in 2usize..10, seed in any::<u64>()) {
        let problem = pair_trap(pairs);
        for config in configs(400) {
            let run = config.evolve(&problem, &mut RandomSource::new(seed)).unwrap();
            prop_assert!(run.trajectory.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(*run.trajectory.last().unwrap(), run.best_fitness);
            prop_assert_eq!(problem.fitness(&run.best).unwrap(), run.best_fitness);
        }
    }

    #[test]
    fn same_seed_same_run(seed in any::<u64>()) {
        let problem = onemax(12);
        for config in configs(300) {
            let a = config.evolve(&problem, &mut RandomSource::new(seed)).unwrap();
            let b = config.evolve(&problem, &mut RandomSource::new(seed)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
