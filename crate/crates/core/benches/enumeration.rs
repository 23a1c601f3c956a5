//! Sequential vs parallel enumeration over the tuple spaces.
//!
//! `jobs = Some(1)` pins the classifier to one worker (the sequential path);
//! `jobs = None` uses the default rayon pool when the `parallel` feature is
//! enabled. Built without the feature, both runs are sequential.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bolext::classifier::{enumerate, EnumerateOptions, TupleScope};
use bolext::group::{make_cyclic, make_dihedral};

fn bench_enumeration(c: &mut Criterion) {
    let cases = [
        ("C4_full", Arc::new(make_cyclic(4).unwrap()), TupleScope::Full),
        ("D8_full", Arc::new(make_dihedral(8).unwrap()), TupleScope::Full),
        ("D8_assumptions", Arc::new(make_dihedral(8).unwrap()), TupleScope::Assumptions),
    ];
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, g, scope) in cases {
        group.bench_with_input(BenchmarkId::new("seq", name), &g, |b, g| {
            let opts = EnumerateOptions { jobs: Some(1), ..Default::default() };
            b.iter(|| enumerate(g, scope, &opts).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("par", name), &g, |b, g| {
            let opts = EnumerateOptions::default();
            b.iter(|| enumerate(g, scope, &opts).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumeration);
criterion_main!(benches);
