use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ntru_witt::witt::witt_sum_fold;
use ntru_witt::{
    buchberger, generate_system, keygen, solve_exhaustive, GroebnerConfig, NtruParams, WittVec,
};

fn poly_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_mul");
    for n in [23usize, 61] {
        let keys = keygen(NtruParams::new(n, 1 << 16).unwrap(), 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &keys, |b, k| {
            b.iter(|| black_box(&k.f).mul(black_box(&k.h)).unwrap())
        });
    }
    group.finish();
}

fn witt_fold(c: &mut Criterion) {
    let terms: Vec<WittVec<bool>> = (0..23u32)
        .map(|i| WittVec::from_residue(i * 7 % 16).unwrap())
        .collect();
    c.bench_function("witt_sum_fold/23", |b| {
        b.iter(|| witt_sum_fold(black_box(&terms)))
    });
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_system");
    group.sample_size(10);
    for (n, bits) in [(11usize, 4u8), (17, 3), (17, 4)] {
        let keys = keygen(NtruParams::new(n, 128).unwrap(), 1).unwrap();
        group.bench_function(format!("N{n}_bits{bits}"), |b| {
            b.iter(|| generate_system(black_box(&keys), bits).unwrap())
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let params = NtruParams::new(17, 128).unwrap();
    let keys = keygen(params, 1).unwrap();
    let sys = generate_system(&keys, 3).unwrap();
    let mut group = c.benchmark_group("solve_exhaustive");
    group.sample_size(10);
    group.bench_function("N17_bits3", |b| {
        b.iter(|| solve_exhaustive(black_box(&sys), &params, &keys.h).unwrap())
    });
    group.finish();
}

fn groebner(c: &mut Criterion) {
    let keys = keygen(NtruParams::new(7, 128).unwrap(), 1).unwrap();
    let sys = generate_system(&keys, 4).unwrap();
    c.bench_function("buchberger/N7_bits4", |b| {
        b.iter(|| buchberger(black_box(&sys), GroebnerConfig::default()).unwrap())
    });
}

criterion_group!(benches, poly_mul, witt_fold, generation, exhaustive, groebner);
criterion_main!(benches);
