//! Benchmarks the exhaustive table search at different worker counts.
//!
//! With the default `parallel` feature the worker count maps to a rayon
//! pool; compile with `--no-default-features` to time the sequential
//! fallback on the same configurations:
//!
//!   cargo bench -p hyperalg
//!   cargo bench -p hyperalg --no-default-features

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hyperalg::search::{search, total_candidates, SearchConfig};

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_32768");
    let base = SearchConfig::default();
    group.throughput(Throughput::Elements(total_candidates(&base)));
    group.sample_size(20);

    let worker_counts: &[usize] = if cfg!(feature = "parallel") { &[1, 2, 4, 8] } else { &[1] };
    for &workers in worker_counts {
        group.bench_with_input(BenchmarkId::new("workers", workers), &workers, |b, &w| {
            let cfg = SearchConfig { worker_count: w, ..SearchConfig::default() };
            b.iter(|| search(&cfg).unwrap());
        });
    }
    group.finish();
}

fn bench_unconstrained_slice(c: &mut Criterion) {
    // A fixed 65,536-candidate slice of the 8^9 unconstrained space, so
    // the pruning predicates see realistic (mostly failing) tables.
    let mut group = c.benchmark_group("unconstrained_slice_65536");
    group.throughput(Throughput::Elements(65_536));
    group.sample_size(20);

    let worker_counts: &[usize] = if cfg!(feature = "parallel") { &[1, 4] } else { &[1] };
    for &workers in worker_counts {
        group.bench_with_input(BenchmarkId::new("workers", workers), &workers, |b, &w| {
            let cfg = SearchConfig {
                require_commutative: false,
                require_i_squared_minus_one: false,
                worker_count: w,
                index_range: Some((10_000_000, 10_065_536)),
                ..SearchConfig::default()
            };
            b.iter(|| search(&cfg).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_unconstrained_slice);
criterion_main!(benches);
