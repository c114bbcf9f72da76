use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use weakper_core::{
    brute_decompose, build_field, companion_from_coeffs, decompose_wp2, sr_set, verify_field,
    Element, Mat, Mode, Potency, VerifyOptions, DEFAULT_BRUTE_CAP, DEFAULT_ENUM_CAP,
};

fn char_and_min_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for (p, l, n) in [(2u64, 3u32, 4usize), (7, 1, 6), (3, 2, 8)] {
        let f = build_field(p, l).unwrap();
        let q = f.order();
        let e = (0..n * n).map(|i| Element((i as u32 * 7 + 3) % q)).collect();
        let m = Mat::new(&f, n, e).unwrap();
        let id = format!("GF({p}^{l}) n={n}");
        group.bench_with_input(BenchmarkId::new("berkowitz", &id), &m, |b, m| b.iter(|| black_box(m).char_poly()));
        group.bench_with_input(BenchmarkId::new("krylov_min_poly", &id), &m, |b, m| b.iter(|| black_box(m).min_poly()));
    }
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    let f = build_field(2, 2).unwrap();
    let comp = companion_from_coeffs(&f, &[Element(1), Element(0), Element(3)]).unwrap();
    for potency in Potency::ALL {
        group.bench_function(BenchmarkId::new("wp2", potency.name()), |b| {
            b.iter(|| decompose_wp2(black_box(&comp), potency, DEFAULT_ENUM_CAP).unwrap())
        });
        group.bench_function(BenchmarkId::new("brute_n3_q4", potency.name()), |b| {
            b.iter(|| brute_decompose(black_box(comp.matrix()), potency, DEFAULT_BRUTE_CAP).unwrap())
        });
    }
    group.sample_size(10);
    let f9 = build_field(3, 2).unwrap();
    group.bench_function("verify_field_constructive_q9_n3", |b| {
        b.iter(|| verify_field(3, &f9, Mode::Constructive, &VerifyOptions::default()).unwrap())
    });
    group.finish();
}

fn root_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("sr_set");
    for (p, l, n, d) in [(2u64, 1u32, 3usize, 3usize), (3, 1, 3, 3), (5, 1, 2, 2)] {
        let f = build_field(p, l).unwrap();
        group.bench_function(format!("GF({p}^{l}) n={n} D={d}"), |b| b.iter(|| sr_set(n, &f, d).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, char_and_min_poly, decompositions, root_sums);
criterion_main!(benches);
