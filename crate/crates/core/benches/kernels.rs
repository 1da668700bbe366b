//! Scoring, triangle and rewiring kernels.
//!
//! Each benchmark id carries the backend it ran on. With the `parallel`
//! feature the same kernel is also run inside a one-thread rayon pool, so
//! `cargo bench` and `cargo bench --no-default-features` together give the
//! rayon / one-thread rayon / plain sequential comparison.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linkpred::eval::{precision_at_n, split_edges};
use linkpred::ingest::{generate_ba, BaParams};
use linkpred::rewire::{RewireObjective, Rewirer};
use linkpred::seed::rng;
use linkpred::{score_all, triangle_count, Graph, PredictorSpec};

type Runner = Box<dyn Fn(&mut (dyn FnMut() + Send))>;

fn backends() -> Vec<(String, Runner)> {
    #[cfg_attr(not(feature = "parallel"), allow(unused_mut))]
    let mut out: Vec<(String, Runner)> = vec![(
        linkpred::backend().to_string(),
        Box::new(|f: &mut (dyn FnMut() + Send)| f()),
    )];
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        out.push((
            "rayon-1-thread".to_string(),
            Box::new(move |f: &mut (dyn FnMut() + Send)| pool.install(f)),
        ));
    }
    out
}

fn bench_scoring(c: &mut Criterion) {
    let g = generate_ba(BaParams::new(2000, 5, 1)).unwrap();
    let small = generate_ba(BaParams::new(500, 5, 1)).unwrap();
    let mut group = c.benchmark_group("score_all");
    group.sample_size(10);
    for (method, graph) in [
        ("cn", &g),
        ("ra", &g),
        ("srw:3", &g),
        ("katz:0.005", &g),
        ("pr:0.5", &small),
    ] {
        let spec: PredictorSpec = method.parse().unwrap();
        for (name, run) in backends() {
            group.bench_function(BenchmarkId::new(method, &name), |b| {
                run(&mut || b.iter(|| black_box(score_all(graph, &spec).unwrap())));
            });
        }
    }
    group.finish();
}

fn bench_triangles(c: &mut Criterion) {
    let g = generate_ba(BaParams::new(4000, 5, 2)).unwrap();
    let mut group = c.benchmark_group("triangle_count");
    for (name, run) in backends() {
        group.bench_function(BenchmarkId::new("BA(4000,5)", &name), |b| {
            run(&mut || b.iter(|| black_box(triangle_count(&g))));
        });
    }
    group.finish();
}

fn bench_rewire(c: &mut Criterion) {
    let g = generate_ba(BaParams::new(4000, 5, 3)).unwrap();
    let mut group = c.benchmark_group("rewire_10k_steps");
    group.sample_size(10);
    for objective in [RewireObjective::Triangles, RewireObjective::Clustering] {
        group.bench_function(BenchmarkId::from_parameter(objective), |b| {
            b.iter(|| {
                let mut r = Rewirer::new(&g).with_objective(objective);
                let mut state = rng(4);
                for _ in 0..10_000 {
                    r.step(&mut state);
                }
                black_box(r.triangles())
            })
        });
    }
    group.finish();
}

fn bench_precision(c: &mut Criterion) {
    let g: Graph = generate_ba(BaParams::new(2000, 5, 5)).unwrap();
    let split = split_edges(&g, 6, 0.1).unwrap();
    let train = split.train_graph(&g);
    let table = score_all(&train, &PredictorSpec::CommonNeighbors).unwrap();
    c.bench_function("precision_at_n/cn", |b| {
        b.iter(|| black_box(precision_at_n(&train, &table, &split.test_edges).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_scoring,
    bench_triangles,
    bench_rewire,
    bench_precision
);
criterion_main!(benches);
