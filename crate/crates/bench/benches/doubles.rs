use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use weakhopf::corpus::{k_cyclic, k_s3_tensor_dual, k_s_prime, k_semilattice};
use weakhopf::double::{check_closed_form, check_qybe, check_quasi_cocommutative, quantum_double, r_matrix, DoubleKernel, DoubleOptions, DEFAULT_MAX_TERMS};
use weakhopf::monoid::{matrix_clifford_monoid, monoid_algebra};
use weakhopf::scalar::FieldSpec;

const Q: FieldSpec = FieldSpec::Rationals;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantum_double");
    for (name, h) in [("kSprime", k_s_prime(Q)), ("kZ3", k_cyclic(3, Q)), ("kY", k_semilattice(Q))] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &h, |b, h| b.iter(|| quantum_double(black_box(h), DoubleOptions::default()).unwrap()));
    }
    group.sample_size(10);
    let h = k_s3_tensor_dual(Q);
    group.bench_function("kS3e-tensor-dual", |b| b.iter(|| quantum_double(black_box(&h), DoubleOptions::default()).unwrap()));
    group.finish();
}

fn r_matrix_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("r_matrix");
    for (name, h) in [("kSprime", k_s_prime(Q)), ("kY", k_semilattice(Q))] {
        let d = quantum_double(&h, DoubleOptions::default()).unwrap();
        let r = r_matrix(&d).unwrap();
        group.bench_function(BenchmarkId::new("qybe", name), |b| b.iter(|| check_qybe(&d, &r, DEFAULT_MAX_TERMS).unwrap()));
        group.bench_function(BenchmarkId::new("quasi_cocommutative", name), |b| b.iter(|| check_quasi_cocommutative(&d, &r)));
    }
    group.finish();
}

fn flagship_qybe(c: &mut Criterion) {
    let d = quantum_double(&k_s3_tensor_dual(Q), DoubleOptions::default()).unwrap();
    let r = r_matrix(&d).unwrap();
    let mut group = c.benchmark_group("flagship");
    group.sample_size(10);
    group.bench_function("qybe", |b| b.iter(|| check_qybe(&d, &r, DEFAULT_MAX_TERMS).unwrap()));
    group.finish();
}

fn closed_form(c: &mut Criterion) {
    let s = matrix_clifford_monoid().unwrap();
    let h = monoid_algebra(&s, Q).unwrap();
    let mut group = c.benchmark_group("closed_form");
    group.sample_size(10);
    // A fresh kernel per iteration so its product cache starts cold.
    group.bench_function("50_samples", |b| b.iter(|| check_closed_form(&DoubleKernel::new(&h).unwrap(), &s, 50, 0x5eed).unwrap()));
    group.finish();
}

criterion_group!(benches, build, r_matrix_checks, flagship_qybe, closed_form);
criterion_main!(benches);
