//! Hot-path benchmarks: symbol evaluation, operator application, the
//! structural quadrature, and a small ground-state solve.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use ckn_core::constants::kappa_general;
use ckn_core::solver::{solve_ground_state, Init};
use ckn_core::spectral::{apply_pm, theta_symbol, SymbolOp};
use ckn_core::{Grid, Parameters, RadialField};

fn bench_symbol(c: &mut Criterion) {
    c.bench_function("theta_symbol n=3 gamma=0.5 m=1", |b| {
        b.iter(|| theta_symbol(black_box(3), black_box(0.5), black_box(1), black_box(2.5)).unwrap())
    });
}

fn bench_apply_pm(c: &mut Criterion) {
    let grid = Grid::new(20.0, 2048).unwrap();
    let field = RadialField::from_fn(grid, |t| (-0.6 * t * t).exp()).unwrap();
    c.bench_function("apply_pm N=2048", |b| {
        b.iter(|| apply_pm(black_box(&field), 3, 0.5, 0).unwrap())
    });
    let op = SymbolOp::mode(grid, 3, 0.5, 0).unwrap();
    let v = field.values().to_vec();
    c.bench_function("apply_slice N=2048 (prebuilt multiplier)", |b| {
        b.iter_batched(|| v.clone(), |w| op.apply_slice(black_box(&w)), BatchSize::SmallInput)
    });
}

fn bench_kappa(c: &mut Criterion) {
    c.bench_function("kappa_general n=3 gamma=0.5 alpha=-0.3", |b| {
        b.iter(|| kappa_general(3, 0.5, black_box(-0.3), 1.0, 1e-9).unwrap())
    });
}

fn bench_ground_state(c: &mut Criterion) {
    let params = Parameters::new(3, 0.5, 0.0, 0.0).unwrap();
    let grid = Grid::new(20.0, 512).unwrap();
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    group.bench_function("ground state N=512", |b| {
        b.iter(|| solve_ground_state(black_box(&params), grid, Init::Preset, 1e-10).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_symbol, bench_apply_pm, bench_kappa, bench_ground_state);
criterion_main!(benches);
