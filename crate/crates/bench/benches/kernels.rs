use std::hint::black_box;

use arcram::lab::{random_regular_arc, random_singular_primitive_arc, random_unit};
use arcram::{Arc, AsData, CoverSpec, Field, LaurentSeries};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dense(f: &Field, n: i64, seed: u64) -> LaurentSeries {
    let terms: Vec<_> = (0..n)
        .map(|k| (k, f.from_i64(((k as u64 * 2654435761 + seed) % 7 + 1) as i64)))
        .collect();
    LaurentSeries::from_terms(f, &terms, n)
}

fn series(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let mut g = c.benchmark_group("series");
    for n in [64i64, 256, 1024] {
        let (a, b) = (dense(&f, n, 1), dense(&f, n, 2));
        g.bench_with_input(BenchmarkId::new("mul", n), &n, |bench, _| bench.iter(|| black_box(&a * &b)));
        g.bench_with_input(BenchmarkId::new("invert", n), &n, |bench, _| {
            bench.iter(|| black_box(a.invert().unwrap()))
        });
    }
    g.finish();
}

fn arcs(c: &mut Criterion) {
    let f = Field::prime(3).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let sing: Vec<Arc> = (0..8).map(|_| random_singular_primitive_arc(&mut r, &f, 256, 6)).collect();
    // Arcs inside the branch locus have no restricted extension; keep them off the axes.
    let reg: Vec<Arc> = std::iter::repeat_with(|| random_regular_arc(&mut r, &f, 256, 8))
        .filter(|a| !a.t().is_zero() && !a.u().is_zero())
        .take(8)
        .collect();
    c.bench_function("hn_expand", |b| {
        b.iter(|| {
            for a in &sing {
                black_box(a.hn_expand().unwrap());
            }
        })
    });
    c.bench_function("intersect", |b| {
        b.iter(|| {
            for (x, y) in sing.iter().zip(&reg) {
                black_box(x.intersect(y).unwrap());
            }
        })
    });
    let cv = CoverSpec::ElemAbelian(vec![
        AsData::new(2, 1, random_unit(&mut r, &f, 3)),
        AsData::new(1, 2, random_unit(&mut r, &f, 3)),
    ]);
    c.bench_function("wild_jumps_on_arc", |b| {
        b.iter(|| {
            for a in &reg {
                black_box(cv.wild_jumps_on_arc(a).unwrap());
            }
        })
    });
}

criterion_group!(benches, series, arcs);
criterion_main!(benches);
