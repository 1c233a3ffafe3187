use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entlab::channels::depolarizing;
use entlab::experiments::{bound_check, example2_run, Ensemble};
use entlab::linalg::{hermitian_eig, random_density_matrix, random_hermitian, stream_rng};
use entlab::measures::{concurrence, log_negativity};
use entlab::Cut;
use std::hint::black_box;

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    for n in [4, 16] {
        let m = random_hermitian(n, &mut stream_rng(1, n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| hermitian_eig(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn measures(c: &mut Criterion) {
    let rho = random_density_matrix(&[2, 2], &mut stream_rng(2, 0));
    c.bench_function("concurrence", |b| {
        b.iter(|| concurrence(black_box(&rho)).unwrap())
    });

    let four = random_density_matrix(&[2, 2, 2, 2], &mut stream_rng(3, 0));
    let cut = Cut::new(vec![1, 3]);
    c.bench_function("log_negativity_4q", |b| {
        b.iter(|| log_negativity(black_box(&four), &cut).unwrap())
    });
}

fn experiments(c: &mut Criterion) {
    let ch = depolarizing(0.5).unwrap();
    c.bench_function("bound_check_1000", |b| {
        b.iter(|| bound_check(&ch, 1000, 42, Ensemble::Mixed).unwrap())
    });
    c.bench_function("example2", |b| {
        b.iter(|| example2_run(black_box(0.8), None).unwrap())
    });
}

criterion_group!(benches, eigensolver, measures, experiments);
criterion_main!(benches);
