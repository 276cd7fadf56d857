use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hoqiga::{
    contraction_update, BitString, Problem, QuantumChromosome, QuantumRegister, RandomSource,
};
use hoqiga_bench::{evolvers, three_sat, trap};
use std::hint::black_box;

fn full_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_5000_fe");
    group.sample_size(10);
    let sat = three_sat(100);
    let trap = trap(24);
    for (name, config) in evolvers() {
        group.bench_with_input(BenchmarkId::new(name, "3sat100"), &config, |b, cfg| {
            b.iter(|| {
                cfg.evolve(&sat, &mut RandomSource::new(1))
                    .unwrap()
                    .best_fitness
            })
        });
        group.bench_with_input(BenchmarkId::new(name, "trap24"), &config, |b, cfg| {
            b.iter(|| {
                cfg.evolve(&trap, &mut RandomSource::new(1))
                    .unwrap()
                    .best_fitness
            })
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    for order in [1usize, 2, 4, 8] {
        let chrom = QuantumChromosome::uniform(256, order).unwrap();
        c.bench_function(&format!("observe_n256_r{order}"), |b| {
            let mut rng = RandomSource::new(3);
            b.iter(|| chrom.observe(&mut rng))
        });
    }
    let reg = QuantumRegister::uniform(4).unwrap();
    c.bench_function("contraction_r4", |b| {
        b.iter(|| contraction_update(black_box(&reg), 5, 0.9918).unwrap())
    });
    let sat = three_sat(250);
    let bits = BitString::zeros(250);
    c.bench_function("maxsat_eval_n250", |b| {
        b.iter(|| sat.evaluate(black_box(bits.as_slice())))
    });
}

criterion_group!(benches, kernels, full_runs);
criterion_main!(benches);
