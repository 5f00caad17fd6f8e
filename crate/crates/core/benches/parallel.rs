use std::hint::black_box;

use clusterkit_core::cluster::compute_clusters;
use clusterkit_core::oracle::{minimal_submodule, OracleConfig};
use clusterkit_core::random::{random_algebra, random_module};
use clusterkit_core::{Execution, LieModule};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn batch(n: usize) -> Vec<LieModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n)
        .map(|i| {
            let p = [2, 3, 5][i % 3];
            let alg = random_algebra(&mut rng, p);
            random_module(&mut rng, &alg, 6)
        })
        .collect()
}

/// The largest module in the batch that still fits an exhaustive scan.
fn scan_target(modules: &[LieModule], bound: u64) -> &LieModule {
    modules
        .iter()
        .filter(|m| (m.field().size() as u128).pow(m.dim() as u32) <= bound as u128)
        .max_by_key(|m| (m.field().size() as u128).pow(m.dim() as u32))
        .expect("nonempty batch")
}

fn bench(c: &mut Criterion) {
    let modules = batch(96);
    let mut group = c.benchmark_group("compute_clusters");
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| compute_clusters(black_box(&modules), exec))
        });
    }
    group.finish();

    let bound = 1 << 14;
    let target = scan_target(&modules, bound);
    let mut group = c.benchmark_group("minimal_submodule_scan");
    for exec in [Execution::Sequential, Execution::Parallel] {
        let cfg = OracleConfig { bound, exec };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &cfg, |b, cfg| {
            b.iter(|| minimal_submodule(black_box(target), cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
