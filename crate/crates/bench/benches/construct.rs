use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclofactor_core::{
    all_quadratic_factors, build_sigma, cyclotomic, quadratic_factor, to_univariate, ConstructionSpec, CoordPerm,
    FieldCtx,
};

fn field(p: u32, k: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, k, None, None).unwrap())
}

/// Paired type-4 spec with a random `a₁` and `a₂ = a₁⁻¹`.
fn spec(p: u32, k: u32, r: u64) -> ConstructionSpec {
    let ctx = field(p, k);
    let h = quadratic_factor(r, &ctx, None).unwrap();
    let a1 = CoordPerm::random(ctx.q(), 7);
    let a2 = a1.inverse();
    ConstructionSpec::type4(ctx, h, 1, a1, a2).unwrap()
}

// (p, k, r) with q^2 from 49 up to 2^20
const SIZES: [(u32, u32, u64); 4] = [(7, 1, 8), (31, 1, 32), (2, 8, 257), (2, 10, 1025)];

fn bench_field(c: &mut Criterion) {
    let mut g = c.benchmark_group("field_ctx");
    for (p, k) in [(13, 1), (2, 8), (2, 10)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p}^{k}")), &(p, k), |b, &(p, k)| {
            b.iter(|| FieldCtx::new(black_box(p), k, None, None).unwrap())
        });
    }
    g.finish();
}

fn bench_factors(c: &mut Criterion) {
    let ctx = field(13, 1);
    c.bench_function("cyclotomic_q13_r168", |b| b.iter(|| cyclotomic(black_box(168), &ctx).unwrap()));
    c.bench_function("all_quadratic_factors_q13_r168", |b| {
        b.iter(|| all_quadratic_factors(black_box(168), &ctx).unwrap())
    });
}

fn bench_sigma(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma");
    g.sample_size(10);
    for (p, k, r) in SIZES {
        let s = spec(p, k, r);
        g.bench_with_input(BenchmarkId::new("build", s.ctx().q2()), &s, |b, s| b.iter(|| build_sigma(s).unwrap()));
        let sigma = build_sigma(&s).unwrap();
        g.bench_with_input(BenchmarkId::new("cycle_structure", s.ctx().q2()), &sigma, |b, f| {
            b.iter(|| f.cycle_structure().unwrap())
        });
        g.bench_with_input(BenchmarkId::new("is_cpp", s.ctx().q2()), &sigma, |b, f| b.iter(|| f.is_cpp()));
    }
    g.finish();
}

fn bench_univariate(c: &mut Criterion) {
    let mut g = c.benchmark_group("to_univariate");
    g.sample_size(10);
    for (p, k, r) in [(5, 1, 3), (7, 1, 8), (13, 1, 7)] {
        let sigma = build_sigma(&spec(p, k, r)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(sigma.len()), &sigma, |b, f| {
            b.iter(|| to_univariate(f).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_field, bench_factors, bench_sigma, bench_univariate);
criterion_main!(benches);
