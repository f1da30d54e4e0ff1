use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use su2_factor::{canonicalize, euler_inplane, expm_su2, factorize, verify, Vec3};
use su2_factor_bench::{rng, sample_problems};

use rand::Rng;

fn bench_expm(c: &mut Criterion) {
    let mut rng = rng(1);
    let inputs: Vec<Vec3> = (0..256)
        .map(|_| {
            Vec3::new(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            )
        })
        .collect();
    let mut i = 0;
    c.bench_function("expm_su2", |b| {
        b.iter(|| {
            i = (i + 1) % inputs.len();
            expm_su2(black_box(inputs[i]))
        })
    });
}

fn bench_canonicalize(c: &mut Criterion) {
    let problems = sample_problems(256, 2);
    let mut i = 0;
    c.bench_function("canonicalize", |b| {
        b.iter(|| {
            i = (i + 1) % problems.len();
            canonicalize(black_box(&problems[i].1))
        })
    });
}

fn bench_euler(c: &mut Criterion) {
    let problems = sample_problems(256, 3);
    let mut i = 0;
    c.bench_function("euler_inplane", |b| {
        b.iter(|| {
            i = (i + 1) % problems.len();
            euler_inplane(black_box(&problems[i].0), black_box(0.7))
        })
    });
}

fn bench_factorize(c: &mut Criterion) {
    let problems = sample_problems(64, 4);
    let mut group = c.benchmark_group("factorize");
    for bound in [0.05, 0.5, 2.0] {
        let mut i = 0;
        group.bench_with_input(BenchmarkId::from_parameter(bound), &bound, |b, &bound| {
            b.iter(|| {
                i = (i + 1) % problems.len();
                let (target, pair) = &problems[i];
                factorize(black_box(target), black_box(pair), bound, 1e-9).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let problems = sample_problems(64, 5);
    let factored: Vec<_> = problems
        .iter()
        .map(|(target, pair)| {
            let (seq, _) = factorize(target, pair, 0.1, 1e-9).unwrap();
            (target, pair, seq)
        })
        .collect();
    let mut i = 0;
    c.bench_function("verify", |b| {
        b.iter(|| {
            i = (i + 1) % factored.len();
            let (target, pair, seq) = &factored[i];
            verify(black_box(target), black_box(pair), black_box(seq))
        })
    });
}

criterion_group!(
    benches,
    bench_expm,
    bench_canonicalize,
    bench_euler,
    bench_factorize,
    bench_verify
);
criterion_main!(benches);
