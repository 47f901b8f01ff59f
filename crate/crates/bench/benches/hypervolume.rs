use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use volsel_bench::{float_set, int_set};
use volsel_core::{hv_estimate, hv_inclusion_exclusion, hv_sweep};

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("hv_sweep");
    for d in [2, 3, 4] {
        for n in [16, 128, 1024] {
            let set = float_set(n, d, 1e6);
            g.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &set, |b, s| {
                b.iter(|| hv_sweep(black_box(&s.refs())))
            });
        }
    }
    g.finish();
}

fn exact_vs_float(c: &mut Criterion) {
    let mut g = c.benchmark_group("hv_sweep_mode");
    let f = float_set(256, 3, 1e6);
    let i = int_set(256, 3, 1_000_000);
    g.bench_function("float", |b| b.iter(|| hv_sweep(black_box(&f.refs()))));
    g.bench_function("exact", |b| b.iter(|| hv_sweep(black_box(&i.refs()))));
    g.finish();
}

fn inclusion_exclusion(c: &mut Criterion) {
    let mut g = c.benchmark_group("hv_inclusion_exclusion");
    for n in [8, 12, 16] {
        let set = float_set(n, 3, 1e6);
        g.bench_with_input(BenchmarkId::from_parameter(n), &set, |b, s| {
            b.iter(|| hv_inclusion_exclusion(black_box(&s.refs())).unwrap())
        });
    }
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let set = float_set(64, 3, 1e6);
    c.bench_function("hv_estimate/n64_eps0.1", |b| {
        b.iter(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            hv_estimate(black_box(&set.refs()), 0.1, 0.05, &mut rng).unwrap()
        })
    });
}

criterion_group!(
    benches,
    sweep,
    exact_vs_float,
    inclusion_exclusion,
    monte_carlo
);
criterion_main!(benches);
