use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use opgray::counting::{enumerate_outerplane, extremal_family, OuterplaneSpec};
use opgray::dualtree::labeling_for_root;
use opgray::sweep::{gray_code_sweep, gray_code_sweep_sequential};
use opgray::treegen::{ClassFilter, Generator, LabeledGraph, SpanningTree, TieBreak};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("pof sweep");
    group.sample_size(10);
    for m in [6, 7] {
        let graphs = enumerate_outerplane(OuterplaneSpec::all(m));
        group.bench_with_input(BenchmarkId::new("rayon", m), &graphs, |b, g| {
            b.iter(|| gray_code_sweep(black_box(g), ClassFilter::Pof))
        });
        group.bench_with_input(BenchmarkId::new("sequential", m), &graphs, |b, g| {
            b.iter(|| gray_code_sweep_sequential(black_box(g), ClassFilter::Pof))
        });
    }
    group.finish();
}

fn greedy(c: &mut Criterion) {
    const TREES: usize = 20_000;
    let e = extremal_family(24, 1).unwrap();
    let g = e.graph();
    let (_, labeling) = labeling_for_root(&e, 0).unwrap();
    let initial = SpanningTree::first(&LabeledGraph::new(g, &labeling)).unwrap();
    let mut group = c.benchmark_group("greedy");
    group.throughput(Throughput::Elements(TREES as u64));
    group.bench_function("strip m=50 closest", |b| {
        b.iter(|| {
            Generator::new(g, &labeling, TieBreak::Closest)
                .limit(TREES)
                .run(black_box(&initial))
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, sweeps, greedy);
criterion_main!(benches);
