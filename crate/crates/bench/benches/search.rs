use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minorforge::graph::petersen;
use minorforge::{all_graphs, canonical_form, find_minor, GraphFilter, PatternSpec};
use minorforge_bench::{cockade, threshold_graphs};

fn minor_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_minor");
    for n in [10, 12, 14] {
        let graphs = threshold_graphs(n, 8);
        group.bench_with_input(BenchmarkId::new("threshold_k8m4", n), &graphs, |b, gs| {
            b.iter(|| gs.iter().filter(|g| find_minor(g, &PatternSpec::Family { t: 8, s: 4 }).unwrap().is_found()).count())
        });
    }
    let g = cockade(2);
    group.bench_function("cockade2_k8m3_absent", |b| {
        b.iter(|| find_minor(black_box(&g), &PatternSpec::Family { t: 8, s: 3 }).unwrap())
    });
    let p = petersen();
    group.bench_function("petersen_k6_absent", |b| {
        b.iter(|| find_minor(black_box(&p), &PatternSpec::Family { t: 6, s: 0 }).unwrap())
    });
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let graphs = threshold_graphs(14, 32);
    c.bench_function("canonical_form/threshold14", |b| {
        b.iter(|| graphs.iter().map(canonical_form).count())
    });
    let g = cockade(4);
    c.bench_function("canonical_form/cockade4", |b| b.iter(|| canonical_form(black_box(&g))));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_graphs");
    group.sample_size(10);
    group.bench_function("n7", |b| b.iter(|| all_graphs(7, &GraphFilter::default()).unwrap().len()));
    let alpha2 = GraphFilter { alpha_at_most: Some(2), ..Default::default() };
    group.bench_function("n8_alpha2", |b| b.iter(|| all_graphs(8, &alpha2).unwrap().len()));
    group.finish();
}

criterion_group!(benches, minor_search, canonical, enumeration);
criterion_main!(benches);
