use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::Rational64;
use qtrig_core::check_formal;
use qtrig_core::formal::fs_pochhammer;
use qtrig_core::identities::FormalParams;

fn series(c: &mut Criterion) {
    for order in [100, 400] {
        c.bench_function(&format!("fs_pochhammer (q;q) to q^{order}"), |b| {
            b.iter(|| {
                fs_pochhammer(Rational64::from_integer(1), Rational64::from_integer(1), 1, black_box(order)).unwrap()
            })
        });
    }
}

fn checks(c: &mut Criterion) {
    c.bench_function("check_formal spec order 25", |b| {
        b.iter(|| check_formal("spec", &FormalParams::default(), black_box(25), None).unwrap())
    });
    let quarter = FormalParams { z: Some(Rational64::new(1, 4)), m: None };
    c.bench_function("check_formal sum-formula z=1/4 order 40", |b| {
        b.iter(|| check_formal("sum-formula", &quarter, black_box(40), None).unwrap())
    });
}

criterion_group!(benches, series, checks);
criterion_main!(benches);
