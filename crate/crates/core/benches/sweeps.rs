use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ybtwist::corpus::build_corpus_with;
use ybtwist::exec::{self, Strategy};
use ybtwist::multi_twist::{n_twist, Flavor};
use ybtwist::solution::enumerate_solutions_with;
use ybtwist::twist::verify_twists;
use ybtwist::{build_corpus, FiniteSolution};

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate-size-4");
    for s in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, &s| {
            b.iter(|| enumerate_solutions_with(black_box(4), s).unwrap())
        });
    }
    g.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let corpus = build_corpus().unwrap();
    let sols: Vec<FiniteSolution> = corpus.solutions().cloned().collect();
    let mut g = c.benchmark_group("corpus");
    for s in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("build", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| build_corpus_with(s).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("twist-checks", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| exec::map(s, &sols, |sol| verify_twists(sol).unwrap().all_passed()))
        });
    }
    g.finish();
}

fn matrix_product(c: &mut Criterion) {
    let sol = ybtwist::lyubashenko_solution(&[1, 2, 3, 0]).unwrap();
    let f = n_twist(&sol, 4, Flavor::F).unwrap().full;
    let t = f.transpose();
    let mut g = c.benchmark_group("matrix-product-1024");
    for s in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, &s| {
            b.iter(|| f.try_mul_with(black_box(&t), s).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, corpus_sweep, matrix_product);
criterion_main!(benches);
