use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use iqpe_core::emulator::amplitude_spectrum;
use iqpe_core::protocol::{monte_carlo_precision, RotationProtocol};
use iqpe_core::scenarios::{modal_ladder, rotation_qfi_map};
use iqpe_core::statekit::Spectral;

fn spectral(c: &mut Criterion) {
    let ladder = modal_ladder(150).unwrap();
    c.bench_function("herm_eig_j2_n150", |b| b.iter(|| Spectral::new(black_box(ladder.j2()))));
}

fn qfi_map(c: &mut Criterion) {
    let mut g = c.benchmark_group("rotation_qfi_map");
    g.sample_size(10);
    g.bench_function("n10_r16", |b| b.iter(|| rotation_qfi_map(black_box(10), 16).unwrap()));
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let p = RotationProtocol::new(10, 0.0).unwrap();
    let mut g = c.benchmark_group("monte_carlo");
    g.sample_size(10);
    g.bench_function("l10_1000_trials", |b| b.iter(|| monte_carlo_precision(&p, 1e-4, 1_000_000, 1000, 7).unwrap()));
    g.finish();
}

fn spectrum(c: &mut Criterion) {
    let x = iqpe_bench::test_series(6000);
    c.bench_function("amplitude_spectrum_6000", |b| {
        b.iter(|| amplitude_spectrum(black_box(&x), 60e3, (18e3, 28e3)).unwrap())
    });
}

criterion_group!(kernels, spectral, qfi_map, monte_carlo, spectrum);
criterion_main!(kernels);
