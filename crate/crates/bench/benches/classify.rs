use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use trusskit_bench::{group, twisted_dual};
use trusskit_core::bimult::{bimultiplications, DEFAULT_OMEGA_LIMIT};
use trusskit_core::catalog::named_ring;
use trusskit_core::classify::{classify_trusses, classify_zero_mult};
use trusskit_core::ring::GroupSymmetry;
use trusskit_core::truss::canonical_table;

fn canonical_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_table");
    for p in [2u64, 3] {
        let t = twisted_dual(p);
        let sym = GroupSymmetry::new(t.group());
        g.bench_with_input(BenchmarkId::from_parameter(p), &t, |b, t| b.iter(|| canonical_table(black_box(t), &sym)));
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for p in [2u64, 3] {
        let a = group(&[p, p]);
        g.bench_with_input(BenchmarkId::new("trusses", p), &a, |b, a| {
            b.iter(|| classify_trusses(a, DEFAULT_OMEGA_LIMIT).unwrap())
        });
    }
    let a = group(&[2, 2, 2]);
    g.bench_function("zero_mult/2x2x2", |b| b.iter(|| classify_zero_mult(&a).unwrap()));
    g.finish();
}

fn omega(c: &mut Criterion) {
    let mut g = c.benchmark_group("bimultiplications");
    for token in ["row", "nilcubed", "zero"] {
        let r = named_ring(token, 3).unwrap();
        g.bench_function(token, |b| b.iter(|| bimultiplications(black_box(&r), DEFAULT_OMEGA_LIMIT).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, canonical_form, classify, omega);
criterion_main!(benches);
