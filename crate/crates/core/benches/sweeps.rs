//! Benchmarks comparing the parallel sweep drivers against their
//! sequential execution on identical workloads.

use criterion::{criterion_group, criterion_main, Criterion};

use hypercolor::exec::ExecMode;
use hypercolor::property::Property;
use hypercolor::sweep::{sweep_brooks, sweep_theorem4, sweep_theorem6};
use hypercolor::EnumerationBounds;

fn bench_bounds() -> EnumerationBounds {
    EnumerationBounds {
        max_order: 4,
        max_edges: 5,
        max_edge_size: 3,
        max_multiplicity: 2,
        connected_only: true,
        simple_only: false,
    }
}

fn bench_theorem4(c: &mut Criterion) {
    let bounds = bench_bounds();
    // warm the enumeration cache so the measurement sees only the sweep
    let _ = sweep_theorem4(&bounds, 2, 2, ExecMode::Sequential).unwrap();
    let mut group = c.benchmark_group("theorem4_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| sweep_theorem4(&bounds, 2, 2, ExecMode::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| sweep_theorem4(&bounds, 2, 2, ExecMode::Parallel).unwrap())
    });
    group.finish();
}

fn bench_brooks(c: &mut Criterion) {
    let bounds = bench_bounds();
    let o = Property::edgeless();
    let _ = sweep_brooks(&o, &bounds, ExecMode::Sequential).unwrap();
    let mut group = c.benchmark_group("brooks_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| sweep_brooks(&o, &bounds, ExecMode::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| sweep_brooks(&o, &bounds, ExecMode::Parallel).unwrap())
    });
    group.finish();
}

fn bench_theorem6(c: &mut Criterion) {
    let bounds = bench_bounds();
    let o = Property::edgeless();
    let _ = sweep_theorem6(&o, &bounds, ExecMode::Sequential).unwrap();
    let mut group = c.benchmark_group("theorem6_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| sweep_theorem6(&o, &bounds, ExecMode::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| sweep_theorem6(&o, &bounds, ExecMode::Parallel).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_theorem4, bench_brooks, bench_theorem6);
criterion_main!(benches);
