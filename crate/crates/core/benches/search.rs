use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subshift::search::{search, Execution, SearchConfig};

fn sequential_vs_parallel(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for count in [2_000u64, 10_000] {
        let config = SearchConfig::new(3, 0, count, 30);
        group.bench_with_input(BenchmarkId::new("sequential", count), &config, |b, cfg| {
            b.iter(|| search(cfg, Execution::Sequential).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", count), &config, |b, cfg| {
            b.iter(|| search(cfg, Execution::Parallel { workers: 0 }).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
