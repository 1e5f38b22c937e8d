use braceforge_bench::{alpha, minus_half, p5};
use braceforge_core::cohomology::{
    build_central_extension, derived_intersection_obstruction, extract_kappa, find_complement,
    solve_coboundary, DEFAULT_COMPLEMENT_CAP,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn alpha_family(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha_family");
    group.sample_size(10);
    for p in [3, 5, 7] {
        let inst = alpha(p, minus_half(p));
        group.bench_with_input(BenchmarkId::new("extract_kappa", p), &inst, |b, i| {
            b.iter(|| extract_kappa(&i.gamma, &i.circle, &i.lift, &i.center).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve_coboundary", p), &inst, |b, i| {
            b.iter(|| solve_coboundary(&i.kappa).unwrap())
        });
        let ext = build_central_extension(&inst.kappa).unwrap();
        group.bench_with_input(BenchmarkId::new("find_complement", p), &ext, |b, e| {
            b.iter(|| find_complement(e, None, DEFAULT_COMPLEMENT_CAP).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("obstruction", p), &ext, |b, e| {
            b.iter(|| derived_intersection_obstruction(e))
        });
    }
    group.finish();
}

fn order_p5(c: &mut Criterion) {
    let mut group = c.benchmark_group("p5");
    group.sample_size(10);
    let inst = p5(3);
    group.bench_function("solve_729_unknowns", |b| b.iter(|| solve_coboundary(&inst.kappa).unwrap()));
    group.bench_function("build_extension_6561", |b| {
        b.iter(|| build_central_extension(&inst.kappa).unwrap())
    });
    let ext = inst.extension().unwrap();
    group.bench_function("obstruction_6561", |b| b.iter(|| derived_intersection_obstruction(&ext)));
    group.finish();
}

criterion_group!(benches, alpha_family, order_p5);
criterion_main!(benches);
