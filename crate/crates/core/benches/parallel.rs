use std::hint::black_box;

use asymlab::fold::w10;
use asymlab::viscous::cole_hopf_field;
use asymlab::{ExecMode, InitialData};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn hopf_grid(c: &mut Criterion) {
    let q = InitialData::neg_tanh();
    let mut group = c.benchmark_group("cole_hopf_field");
    group.sample_size(10);
    for n in [32usize, 64] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| {
                    cole_hopf_field(&q, (-2.0, 2.0), n, (0.5, 1.5), n / 4, 0.01, mode).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn fold_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("w10_grid");
    group.sample_size(10);
    let n = 48usize;
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                asymlab::par::try_map_indexed(mode, n * n, |k| {
                    let xi = -5.0 + 10.0 * (k % n) as f64 / (n - 1) as f64;
                    let tau = -5.0 + 10.0 * (k / n) as f64 / (n - 1) as f64;
                    w10(black_box(xi), black_box(tau), 1.0)
                })
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, hopf_grid, fold_grid);
criterion_main!(benches);
