use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use posmap_bench::{dense, maps, rooted};
use posmap_core::choi::{positivity_poly, Route};
use posmap_core::numkernel::parse_poly;
use posmap_core::renegar::{build_rg_with, falsify_with_count, DetMethod, RSystemOptions};
use posmap_core::sturm::{exists_both_positive, tarski_query};

fn sturm(c: &mut Criterion) {
    let mut group = c.benchmark_group("sturm");
    for m in [3, 6, 10] {
        let f = rooted(m);
        let g = dense(5);
        group.bench_with_input(BenchmarkId::new("tarski", 2 * m), &(f, g), |b, (f, g)| {
            b.iter(|| tarski_query(black_box(f), black_box(g)).unwrap())
        });
    }
    let (p, q) = (dense(8), rooted(4));
    group.bench_function("exists_both_positive", |b| {
        b.iter(|| exists_both_positive(black_box(&p), black_box(&q)).unwrap())
    });
    group.finish();
}

fn choi(c: &mut Criterion) {
    let mut group = c.benchmark_group("positivity_poly");
    let phis = maps(3, 3, 4, 11);
    for route in [Route::Kraus, Route::Choi, Route::DoubleSum] {
        group.bench_function(route.name(), |b| {
            b.iter(|| {
                for phi in &phis {
                    black_box(positivity_poly(phi, route).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("r_g");
    group.sample_size(10);
    let g = parse_poly("x1^2", None).unwrap();
    for (name, method) in [("modular", DetMethod::Modular), ("fraction_free", DetMethod::FractionFree)] {
        let opts = RSystemOptions {
            method,
            ..RSystemOptions::default()
        };
        group.bench_function(name, |b| b.iter(|| build_rg_with(black_box(&g), 1, 2, opts).unwrap()));
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let g = parse_poly("x1^4 + x2^4 + x3^4 - x1^2x2^2", None).unwrap();
    c.bench_function("falsify_1000", |b| b.iter(|| falsify_with_count(black_box(&g), 1000, 7)));
}

criterion_group!(benches, sturm, choi, determinants, sampling);
criterion_main!(benches);
