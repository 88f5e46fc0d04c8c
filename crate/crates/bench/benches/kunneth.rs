use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kunneth::complex::builtin::moore;
use kunneth::linalg::smith_normal_form;
use kunneth::random::{random_free_complex, random_matrix, seeded, ComplexParams};
use kunneth::verify::{run_suite, suite};
use kunneth::{KunnethPair, KunnethSplitting};

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [4usize, 8, 16] {
        let a = random_matrix(&mut seeded(n as u64), n, n, 20);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| smith_normal_form(black_box(a))));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let x = random_free_complex(&mut seeded(3), &ComplexParams::new(6, 5, 9));
    c.bench_function("homology/random", |b| {
        b.iter(|| {
            for n in x.as_fp().degrees() {
                black_box(x.as_fp().homology(n));
            }
        })
    });
}

fn decomposition(c: &mut Criterion) {
    let m = moore(2, 1);
    c.bench_function("decomposition/moore_square", |b| {
        b.iter(|| {
            let p = KunnethPair::new(m.as_fp(), m.as_fp()).unwrap();
            let s = KunnethSplitting::weak(m.as_fp(), m.as_fp());
            black_box(p.decomposition(3, Some(&s)).unwrap())
        })
    });
    let mut rng = seeded(8);
    let params = ComplexParams::new(4, 3, 6);
    let (x, y) = (random_free_complex(&mut rng, &params), random_free_complex(&mut rng, &params));
    c.bench_function("decomposition/random_pair", |b| {
        b.iter(|| {
            let p = KunnethPair::new(x.as_fp(), y.as_fp()).unwrap();
            let s = KunnethSplitting::weak(x.as_fp(), y.as_fp());
            for n in p.product().degrees() {
                black_box(p.decomposition(n, Some(&s)).unwrap());
            }
        })
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for name in ["splitting", "flip"] {
        g.bench_function(name, |b| b.iter(|| run_suite(suite(name).unwrap(), 1, 20)));
    }
    g.finish();
}

criterion_group!(benches, smith, homology, decomposition, suites);
criterion_main!(benches);
