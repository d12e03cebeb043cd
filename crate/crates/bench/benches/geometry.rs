use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lpsum::dgap::dgap_report;
use lpsum::oracles::{bj_orthogonal_oracle, oracle_diameter};
use lpsum::orthogonality::{bj_orthogonal, symmetric_point, Side};
use lpsum::OracleConfig;
use lpsum_bench::{dense_vector, mixed_space};

fn orthogonality(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("orthogonality");
    for p in [0.0, 1.0, 2.0, 3.0] {
        let space = mixed_space(p, 6);
        let x = dense_vector(&space, 0.1);
        let y = dense_vector(&space, 1.7);
        group.bench_with_input(BenchmarkId::new("formula", p), &p, |b, _| {
            b.iter(|| bj_orthogonal(black_box(&space), black_box(&x), black_box(&y)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", p), &p, |b, _| {
            b.iter(|| bj_orthogonal_oracle(black_box(&space), &x, &y, 1e-7, &cfg).unwrap())
        });
    }
    group.finish();
}

fn diameter(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("diameter");
    let space = mixed_space(2.0, 4);
    let x = dense_vector(&space, 0.4);
    group.bench_function("formula", |b| b.iter(|| space.diameter(black_box(&x)).unwrap()));
    group.bench_function("oracle", |b| {
        b.iter(|| oracle_diameter(&space, black_box(&x), &cfg).unwrap())
    });
    group.finish();
}

fn symmetry(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let space = mixed_space(3.0, 4);
    let x = dense_vector(&space, 0.9);
    c.bench_function("symmetric_point/p3", |b| {
        b.iter(|| symmetric_point(&space, black_box(&x), Side::Left, &cfg).unwrap())
    });
}

fn dgap(c: &mut Criterion) {
    let mut group = c.benchmark_group("dgap_report");
    group.sample_size(10);
    for n in [10, 100] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| dgap_report(n, 2.0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, orthogonality, diameter, symmetry, dgap);
criterion_main!(benches);
