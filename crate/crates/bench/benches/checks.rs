use std::sync::Arc;

use braceforge_bench::alpha;
use braceforge_core::gallery::{build_noninner_example, rb_formula_alpha, NonInnerKind};
use braceforge_core::gamma::verify_skew_brace;
use braceforge_core::group::{make_dihedral, make_heisenberg, FiniteGroup};
use braceforge_core::rota_baxter::{enumerate_rb, verify_rb, DEFAULT_ENUMERATION_CAP};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("group");
    for p in [3, 5, 7] {
        let h = make_heisenberg(p).unwrap();
        group.bench_with_input(BenchmarkId::new("heisenberg", p), &p, |b, &p| {
            b.iter(|| make_heisenberg(black_box(p)).unwrap())
        });
        let rows = h.rows();
        group.bench_with_input(BenchmarkId::new("from_table", p), &rows, |b, rows| {
            b.iter(|| FiniteGroup::from_table(black_box(rows), None).unwrap())
        });
    }
    group.finish();
}

fn gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma");
    group.sample_size(20);
    for p in [3, 5, 7] {
        let inst = alpha(p, 2 % p);
        group.bench_with_input(BenchmarkId::new("verify", p), &inst.gamma, |b, g| {
            b.iter(|| g.clone().verify().unwrap())
        });
    }
    let c4d4 = build_noninner_example(NonInnerKind::C4D4).unwrap();
    group.bench_function("skew_brace_c4_d4", |b| {
        b.iter(|| verify_skew_brace(c4d4.brace.dot(), c4d4.brace.circle()).unwrap())
    });
    group.finish();
}

fn rota_baxter(c: &mut Criterion) {
    let mut group = c.benchmark_group("rota_baxter");
    // A genuine operator, so the check runs over all pairs.
    let op = rb_formula_alpha(7, 2).unwrap();
    group.bench_function("verify_rb_order_343", |b| {
        b.iter(|| verify_rb(op.group(), black_box(op.images())))
    });
    let s3 = Arc::new(make_dihedral(3).unwrap());
    group.sample_size(10);
    group.bench_function("enumerate_s3", |b| {
        b.iter(|| enumerate_rb(&s3, DEFAULT_ENUMERATION_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, groups, gamma, rota_baxter);
criterion_main!(benches);
