use std::hint::black_box;

use cmaus_core::algebra::{tensor_with_shape, truncated_polynomial, ShapeKind};
use cmaus_core::ar::{knit, KnitLimits};
use cmaus_core::claims::property_cases;
use cmaus_core::linalg::PrimeField;
use cmaus_core::par;
use criterion::{criterion_group, criterion_main, Criterion};

fn modes(c: &mut Criterion, name: &str, mut run: impl FnMut()) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for (label, sequential) in [("parallel", false), ("sequential", true)] {
        par::set_sequential(sequential);
        group.bench_function(label, |b| b.iter(&mut run));
    }
    par::set_sequential(false);
    group.finish();
}

fn knitting(c: &mut Criterion) {
    let f = PrimeField::binary();
    let t3 = tensor_with_shape(
        &truncated_polynomial(f, 2).unwrap(),
        ShapeKind::Triangular(3),
    )
    .unwrap();
    modes(c, "knit T3(k[x]/x^2)", || {
        black_box(knit(&t3, KnitLimits::default()).unwrap());
    });
    modes(c, "random property cases", || {
        black_box(property_cases(f, 0, 200, KnitLimits::default()).unwrap());
    });
}

criterion_group!(benches, knitting);
criterion_main!(benches);
