#![allow(dead_code)]

use std::sync::Arc;

use cyclofactor_core::numtheory::{divisors, gcd};
use cyclofactor_core::{all_quadratic_factors, ConstructionSpec, CoordPerm, FieldCtx, Level, VariantKind};

/// `(p, k)` for q ∈ {4, 5, 7, 8, 9, 11, 13}.
pub const GRID: [(u32, u32); 7] = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)];

pub fn field(p: u32, k: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, k, None, None).unwrap())
}

/// Every r ≥ 3 with r | q² − 1 and gcd(r, p) = 1.
pub fn admissible_r(ctx: &FieldCtx) -> Vec<u64> {
    let q = ctx.q() as u64;
    divisors(q * q - 1).into_iter().filter(|&r| r >= 3 && gcd(r, ctx.p() as u64) == 1).collect()
}

pub fn scalars(ctx: &FieldCtx) -> Vec<u32> {
    let g = ctx.primitive_element(Level::Fq).index();
    if g == 1 {
        vec![1]
    } else {
        vec![1, g]
    }
}

/// a₁ ∈ {identity, smallest admissible monomial, seeded random}.
pub fn first_maps(ctx: &FieldCtx, seed: u64) -> Vec<(String, CoordPerm)> {
    let q = ctx.q();
    let k = CoordPerm::smallest_monomial_exponent(q);
    vec![
        ("identity".into(), CoordPerm::identity(q)),
        (format!("monomial:{k}"), CoordPerm::monomial(ctx, k).unwrap()),
        (format!("random:{seed}"), CoordPerm::random(q, seed)),
    ]
}

/// One cell of the grid: field, r, factor, variant, m.
pub struct Cell {
    pub ctx: Arc<FieldCtx>,
    pub r: u64,
    pub factor: cyclofactor_core::QuadFactor,
    pub kind: VariantKind,
    pub m: u32,
}

pub fn cells() -> Vec<Cell> {
    let mut out = Vec::new();
    for (p, k) in GRID {
        let ctx = field(p, k);
        for r in admissible_r(&ctx) {
            for factor in all_quadratic_factors(r, &ctx).unwrap() {
                for kind in [VariantKind::Type4, VariantKind::Type5] {
                    for m in scalars(&ctx) {
                        out.push(Cell { ctx: ctx.clone(), r, factor, kind, m });
                    }
                }
            }
        }
    }
    out
}

/// Grid specs with a₂ = a₁⁻¹.
pub fn paired_specs() -> Vec<(String, ConstructionSpec)> {
    let mut out = Vec::new();
    for cell in cells() {
        for (name, a1) in first_maps(&cell.ctx, 42) {
            let a2 = a1.inverse();
            let spec = ConstructionSpec::structured(cell.ctx.clone(), cell.factor, cell.kind, cell.m, a1, a2).unwrap();
            let label = format!(
                "q={} r={} h=({},{}) {} m={} a1={name}",
                cell.ctx.q(),
                cell.r,
                cell.factor.h1(),
                cell.factor.h0(),
                cell.kind,
                cell.m
            );
            out.push((label, spec));
        }
    }
    out
}
