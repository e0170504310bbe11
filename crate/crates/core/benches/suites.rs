//! Sequential against data-parallel suite runs. Build with `--no-default-features` to
//! see the parallel mode fall back to the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cliquecolor::par::Parallelism;
use cliquecolor::suites;

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, mode) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)] {
        group.bench_with_input(BenchmarkId::new("dichotomy/40", name), &mode, |b, &m| {
            b.iter(|| suites::dichotomy(7, 40, m))
        });
        group.bench_with_input(BenchmarkId::new("smallpot/100", name), &mode, |b, &m| {
            b.iter(|| suites::smallpot(7, 100, m))
        });
        group.bench_with_input(BenchmarkId::new("transversal/500", name), &mode, |b, &m| {
            b.iter(|| suites::transversal(7, 500, m))
        });
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
