use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fourfold_bench::dense_matrix;
use fourfold_core::classifier::{hopf_check, lens_family_sweep};
use fourfold_core::extensions::{em_torsion, pi2_extension};
use fourfold_core::group_homology::{bar_homology_oracle_with_budget, group_homology, periodic_resolution};
use fourfold_core::group_ring::{Group, OrientationChar};
use fourfold_core::linalg::smith_normal_form;
use fourfold_core::manifolds::{rp4_complex, torus4_complex};
use num_bigint::BigInt;

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 32] {
        let a = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| smith_normal_form(black_box(a))));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let v4 = Group::product(&[2, 2]).unwrap();
    let w = OrientationChar::trivial(&v4);
    c.bench_function("group_homology V4 degree 4", |b| b.iter(|| group_homology(black_box(&v4), &w, 4).unwrap()));
    let c4 = Group::cyclic(4).unwrap();
    let w4 = OrientationChar::trivial(&c4);
    c.bench_function("bar oracle Z/4 degree 3", |b| {
        b.iter(|| bar_homology_oracle_with_budget(black_box(&c4), &w4, 3, 100_000).unwrap())
    });
}

fn classifiers(c: &mut Criterion) {
    let mut g = c.benchmark_group("classifiers");
    g.sample_size(10);
    g.bench_function("lens sweep p <= 30", |b| b.iter(|| lens_family_sweep(black_box(30)).unwrap()));
    g.bench_function("hopf check RP4", |b| b.iter(|| hopf_check(black_box(&rp4_complex())).unwrap()));
    let c7 = periodic_resolution(7, 4).unwrap().complex().clone();
    g.bench_function("pi2 extension Z/7", |b| b.iter(|| pi2_extension(black_box(&c7)).unwrap()));
    let d3 = torus4_complex().augmented_boundary(3);
    g.bench_function("em torsion T4", |b| b.iter(|| em_torsion(black_box(&d3), &BigInt::from(6))));
    g.finish();
}

criterion_group!(benches, smith, homology, classifiers);
criterion_main!(benches);
