use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quaddyn::arith::rat;
use quaddyn::dynatomic::iterate_poly;
use quaddyn::modp::{d0_mod7, has_root_mod_p, named_polynomial};
use quaddyn::orbit::{portrait_of_in, DEFAULT_DEPTH_MAX};
use quaddyn::scan::scan_rational;
use quaddyn::{BiPoly, Catalog, QuadElem, QuadField};

fn dynatomic_division(c: &mut Criterion) {
    // Φ_6 rebuilt from scratch, bypassing the cache
    c.bench_function("phi6 by exact division", |b| {
        b.iter(|| {
            let num = iterate_poly(6)
                .sub(&BiPoly::z())
                .mul(&iterate_poly(1).sub(&BiPoly::z()));
            let den = iterate_poly(3)
                .sub(&BiPoly::z())
                .mul(&iterate_poly(2).sub(&BiPoly::z()));
            black_box(num.div_exact(&den).unwrap())
        })
    });
}

fn portraits(c: &mut Criterion) {
    let q = QuadElem::rational(rat(-29, 16));
    c.bench_function("portrait c=-29/16 over Q", |b| {
        b.iter(|| {
            portrait_of_in(black_box(&q), QuadField::rationals(), 6, DEFAULT_DEPTH_MAX).unwrap()
        })
    });
    let k = QuadField::new(33).unwrap();
    c.bench_function("portrait c=-29/16 over Q(sqrt 33)", |b| {
        b.iter(|| portrait_of_in(black_box(&q), k, 6, DEFAULT_DEPTH_MAX).unwrap())
    });
    let p = Catalog::builtin().portrait("14(3,1,1)").unwrap().clone();
    c.bench_function("canonical form, 14 vertices", |b| {
        b.iter(|| black_box(&p).canonical_form())
    });
}

fn finite_fields(c: &mut Criterion) {
    let f = named_polynomial("10(3,1,1)").unwrap();
    c.bench_function("root test mod 999983", |b| {
        b.iter(|| has_root_mod_p(black_box(&f), 999_983).unwrap())
    });
    let (jac, d0) = d0_mod7().unwrap();
    c.bench_function("cantor 21*D0", |b| b.iter(|| jac.mul(black_box(&d0), 21)));
}

fn scans(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("rational height 20", |b| {
        b.iter(|| scan_rational(20, 6, 0, cat).unwrap())
    });
    g.finish();
}

criterion_group!(benches, dynatomic_division, portraits, finite_fields, scans);
criterion_main!(benches);
