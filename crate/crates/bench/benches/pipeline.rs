//! Benchmarks for the per-pattern pipeline and the rank machinery: one
//! pattern's topological pipeline, the second-order and distance summaries,
//! and the envelope orderings on a full-size ensemble.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use spatgof::geometry::{alpha_filtration, delaunay};
use spatgof::gof::{cont_measure, erl_measure, CurveEnsemble, Sidedness};
use spatgof::homology::{betti_curve, persistence};
use spatgof::models::{sample_binomial, RngStream};
use spatgof::geometry::Window;
use spatgof::study::SummaryComputer;
use spatgof::summaries::{EvalGrid, SummaryId};

fn bench_topology(c: &mut Criterion) {
    let mut group = c.benchmark_group("topology");
    for &n in &[100usize, 300, 1000] {
        let window = Window::square_with_area(n as f64 / 50.0).unwrap();
        let pattern = sample_binomial(n, &window, RngStream::new(1, 0));
        group.bench_with_input(BenchmarkId::new("delaunay", n), &n, |b, _| {
            b.iter(|| delaunay(black_box(&pattern)).unwrap())
        });
        let tri = delaunay(&pattern).unwrap();
        group.bench_with_input(BenchmarkId::new("alpha+persistence", n), &n, |b, _| {
            b.iter(|| {
                let filt = alpha_filtration(black_box(&tri));
                persistence(&filt)
            })
        });
        let filt = alpha_filtration(&tri);
        let diag = persistence(&filt);
        let grid = EvalGrid::new(0.0, 0.25, 513).unwrap();
        group.bench_with_input(BenchmarkId::new("betti_curves", n), &n, |b, _| {
            b.iter(|| {
                (
                    betti_curve(black_box(&diag), 0, &grid),
                    betti_curve(black_box(&diag), 1, &grid),
                )
            })
        });
    }
    group.finish();
}

fn bench_summaries(c: &mut Criterion) {
    let mut group = c.benchmark_group("summaries");
    group.sample_size(20);
    let window = Window::square_with_area(6.0).unwrap();
    let pattern = sample_binomial(300, &window, RngStream::new(2, 0));
    let computer = SummaryComputer::default();
    for stat in [SummaryId::K, SummaryId::Pcf, SummaryId::G, SummaryId::F, SummaryId::J] {
        group.bench_function(stat.name(), |b| {
            b.iter(|| computer.compute(black_box(&pattern), &[stat]).unwrap())
        });
    }
    group.bench_function("all_eleven", |b| {
        b.iter(|| computer.compute(black_box(&pattern), &SummaryId::ALL).unwrap())
    });
    group.finish();
}

fn bench_orderings(c: &mut Criterion) {
    let mut group = c.benchmark_group("orderings");
    group.sample_size(20);
    let grid = EvalGrid::new(0.0, 0.25, 513).unwrap();
    let mut state = 17u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let curves: Vec<Vec<f64>> = (0..300).map(|_| (0..513).map(|_| next()).collect()).collect();
    let ens = CurveEnsemble::from_values(SummaryId::L, grid, curves).unwrap();
    group.bench_function("erl_m299", |b| {
        b.iter(|| erl_measure(black_box(&ens), 0.25, Sidedness::Two).unwrap())
    });
    group.bench_function("cont_m299", |b| {
        b.iter(|| cont_measure(black_box(&ens), 0.25).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_topology, bench_summaries, bench_orderings);
criterion_main!(benches);
