//! One worker thread against the default pool on the heaviest searches.
//! Build with `--no-default-features` to time the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use covercraft::abelian::{FiniteAbelianGroup, DEFAULT_ELEMENT_LIMIT};
use covercraft::covering::{default_budget, min_trivial_intersection_cover, phi, CoverMode};
use covercraft::suites::{run_suite, SuiteConfig};
use rayon::ThreadPool;

fn pools() -> Vec<(String, ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let n = default.current_num_threads();
    vec![
        ("1-thread".to_string(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        (format!("pool-{n}"), default),
    ]
}

fn searches(c: &mut Criterion) {
    let pools = pools();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for spec in ["C2*C2*C2*C2", "C16", "C3*C3"] {
        let g = FiniteAbelianGroup::parse(spec, DEFAULT_ELEMENT_LIMIT).unwrap();
        let budget = default_budget(&g);
        for (threads, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(format!("phi/{spec}"), threads), &g, |b, g| {
                b.iter(|| pool.install(|| phi(g, &budget).unwrap()))
            });
        }
    }
    for spec in ["C2*C2*C2", "C2*C4"] {
        let g = FiniteAbelianGroup::parse(spec, DEFAULT_ELEMENT_LIMIT).unwrap();
        let budget = default_budget(&g);
        for (threads, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(format!("f/{spec}"), threads), &g, |b, g| {
                b.iter(|| pool.install(|| min_trivial_intersection_cover(g, CoverMode::Cosets, &budget).unwrap()))
            });
        }
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let pools = pools();
    let cfg = SuiteConfig::default();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for name in ["criterion-equiv", "flows", "hyperplane-min"] {
        for (threads, pool) in &pools {
            group.bench_function(BenchmarkId::new(name, threads), |b| {
                b.iter(|| pool.install(|| run_suite(name, &cfg).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, searches, suites);
criterion_main!(benches);
