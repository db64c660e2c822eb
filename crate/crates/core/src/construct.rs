//! Builders for `σ = τ₁ ∘ σ_M ∘ τ₂` over `F_{q^2}`, the factorisations of
//! `σ + e` that show it is a permutation, and the one-round Feistel / MISTY
//! maps.
//!
//! In the structured variants `τ₁(x₁, x₂) = (a₁(x₁), x₂)` and
//! `τ₂(x₁, x₂) = (a₂(x₁), x₂)` for permutations `a₁, a₂` of `F_q`, so
//!
//! ```text
//! σ(x₁, x₂) = (a₁(m₁·a₂(x₁) + m₂·x₂), m₃·a₂(x₁) + m₄·x₂).
//! ```
//!
//! `σ` is always a permutation; it is `r`-regular when `τ₁ ∘ τ₂ = e`, and in
//! the structured variants it is complete for every choice of `a₁, a₂`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Level};
use crate::linmap::Mat2;
use crate::numtheory::gcd;
use crate::permcycle::{CycleStructure, PermMap};
use crate::poly::{check_order_constraint, QuadFactor};

/// A permutation of `F_q`, applied to the first coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordPerm {
    table: Vec<u32>,
}

impl CoordPerm {
    pub fn identity(q: u32) -> Self {
        CoordPerm { table: (0..q).collect() }
    }

    pub fn from_table(q: u32, table: Vec<u32>) -> Result<Self> {
        if table.len() != q as usize {
            return Err(Error::TableLength { expected: q as usize, found: table.len() });
        }
        let mut seen = vec![false; q as usize];
        for &v in &table {
            if v >= q || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(CoordPerm { table })
    }

    /// `x ↦ x^k`, a permutation exactly when `gcd(k, q - 1) = 1`.
    pub fn monomial(ctx: &FieldCtx, k: u64) -> Result<Self> {
        let order = ctx.q() as u64 - 1;
        if k == 0 || gcd(k, order) != 1 {
            return Err(Error::NotCoprimeExponent { k, order });
        }
        let ar = ctx.arith(Level::Fq);
        Ok(CoordPerm { table: (0..ctx.q()).map(|x| ar.pow(x, k)).collect() })
    }

    /// Smallest `k ≥ 2` with `gcd(k, q - 1) = 1`.
    pub fn smallest_monomial_exponent(q: u32) -> u64 {
        (2..).find(|&k| gcd(k, q as u64 - 1) == 1).unwrap()
    }

    /// `x ↦ c·x` for nonzero `c`.
    pub fn scaling(ctx: &FieldCtx, c: u32) -> Result<Self> {
        if c == 0 || c >= ctx.q() {
            return Err(Error::ZeroScalar);
        }
        Ok(CoordPerm { table: (0..ctx.q()).map(|x| ctx.fq_mul(c, x)).collect() })
    }

    /// Uniform random permutation from a SplitMix64 stream seeded with
    /// `seed`: Fisher–Yates from the top, swapping slot `i` with
    /// `next_u64() % (i + 1)` for `i = q-1, …, 1`.
    pub fn random(q: u32, seed: u64) -> Self {
        CoordPerm { table: seeded_shuffle(q, seed) }
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        CoordPerm { table }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CoordPerm) -> Self {
        CoordPerm { table: other.table.iter().map(|&y| self.table[y as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// `a(x + y) = a(x) + a(y)` for all `x, y ∈ F_q`.
    pub fn is_additive(&self, ctx: &FieldCtx) -> bool {
        let q = ctx.q();
        (0..q).all(|x| (0..q).all(|y| self.apply(ctx.fq_add(x, y)) == ctx.fq_add(self.apply(x), self.apply(y))))
    }
}

pub(crate) fn seeded_shuffle(n: u32, seed: u64) -> Vec<u32> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut table: Vec<u32> = (0..n).collect();
    for i in (1..n as usize).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        table.swap(i, j);
    }
    table
}

/// `[[-h0, m·h0·(h0 - h1 + 1)], [-m⁻¹, h0 - h1]]`.
pub fn matrix_type4(h: &QuadFactor, m: u32, ctx: &FieldCtx) -> Result<Mat2> {
    let m_inv = ctx.fq_inv(m).ok_or(Error::ZeroScalar)?;
    let (h0, h1) = (h.h0(), h.h1());
    let c = ctx.fq_add(ctx.fq_sub(h0, h1), 1);
    let mat = Mat2::raw([ctx.fq_neg(h0), ctx.fq_mul(m, ctx.fq_mul(h0, c)), ctx.fq_neg(m_inv), ctx.fq_sub(h0, h1)]);
    check_char_poly(&mat, h, ctx)?;
    Ok(mat)
}

/// `[[1 - h1, m·(h0 - h1 + 1)], [-m⁻¹, -1]]`.
pub fn matrix_type5(h: &QuadFactor, m: u32, ctx: &FieldCtx) -> Result<Mat2> {
    let m_inv = ctx.fq_inv(m).ok_or(Error::ZeroScalar)?;
    let (h0, h1) = (h.h0(), h.h1());
    let c = ctx.fq_add(ctx.fq_sub(h0, h1), 1);
    let mat = Mat2::raw([ctx.fq_sub(1, h1), ctx.fq_mul(m, c), ctx.fq_neg(m_inv), ctx.fq_neg(1)]);
    check_char_poly(&mat, h, ctx)?;
    Ok(mat)
}

/// `[[1 - h1, -h0], [1, 1]]`, whose characteristic polynomial is `h(t - 1)`.
pub fn shifted_matrix(h: &QuadFactor, ctx: &FieldCtx) -> Mat2 {
    Mat2::raw([ctx.fq_sub(1, h.h1()), ctx.fq_neg(h.h0()), 1, 1])
}

fn check_char_poly(mat: &Mat2, h: &QuadFactor, ctx: &FieldCtx) -> Result<()> {
    if mat.char_poly(ctx) != h.poly() {
        return Err(Error::SpecInvariantViolated(format!(
            "characteristic polynomial {} differs from {}",
            mat.char_poly(ctx),
            h.poly()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantKind {
    Type4,
    Type5,
    General,
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantKind::Type4 => "type4",
            VariantKind::Type5 => "type5",
            VariantKind::General => "general",
        })
    }
}

impl FromStr for VariantKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "type4" => Ok(VariantKind::Type4),
            "type5" => Ok(VariantKind::Type5),
            "general" => Ok(VariantKind::General),
            other => Err(format!("unknown variant {other:?}, expected type4, type5 or general")),
        }
    }
}

/// Scalar and first-coordinate permutations of the structured variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structured {
    pub m: u32,
    pub a1: CoordPerm,
    pub a2: CoordPerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    Type4(Structured),
    Type5(Structured),
    General { tau1: PermMap, tau2: PermMap },
}

impl Variant {
    pub fn kind(&self) -> VariantKind {
        match self {
            Variant::Type4(_) => VariantKind::Type4,
            Variant::Type5(_) => VariantKind::Type5,
            Variant::General { .. } => VariantKind::General,
        }
    }

    pub fn structured(&self) -> Option<&Structured> {
        match self {
            Variant::Type4(s) | Variant::Type5(s) => Some(s),
            Variant::General { .. } => None,
        }
    }
}

/// Everything needed to build one `σ`.
#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    ctx: Arc<FieldCtx>,
    factor: QuadFactor,
    matrix: Mat2,
    variant: Variant,
}

/// Properties that hold for a spec by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub pp: bool,
    pub cpp: bool,
    pub r_regular: bool,
}

impl ConstructionSpec {
    pub fn type4(ctx: Arc<FieldCtx>, factor: QuadFactor, m: u32, a1: CoordPerm, a2: CoordPerm) -> Result<Self> {
        Self::structured(ctx, factor, VariantKind::Type4, m, a1, a2)
    }

    pub fn type5(ctx: Arc<FieldCtx>, factor: QuadFactor, m: u32, a1: CoordPerm, a2: CoordPerm) -> Result<Self> {
        Self::structured(ctx, factor, VariantKind::Type5, m, a1, a2)
    }

    pub fn structured(
        ctx: Arc<FieldCtx>,
        factor: QuadFactor,
        kind: VariantKind,
        m: u32,
        a1: CoordPerm,
        a2: CoordPerm,
    ) -> Result<Self> {
        check_factor(&factor, &ctx)?;
        if m == 0 || m >= ctx.q() {
            return Err(Error::ZeroScalar);
        }
        for a in [&a1, &a2] {
            CoordPerm::from_table(ctx.q(), a.table.clone())?;
        }
        let parts = Structured { m, a1, a2 };
        let (matrix, variant) = match kind {
            VariantKind::Type4 => (matrix_type4(&factor, m, &ctx)?, Variant::Type4(parts)),
            VariantKind::Type5 => (matrix_type5(&factor, m, &ctx)?, Variant::Type5(parts)),
            VariantKind::General => {
                return Err(Error::SpecInvariantViolated("general specs take full maps τ₁, τ₂".into()))
            }
        };
        Ok(ConstructionSpec { ctx, factor, matrix, variant })
    }

    /// Arbitrary permutations `τ₁, τ₂` of `F_{q^2}` around a matrix whose
    /// characteristic polynomial is the chosen factor.
    pub fn general(ctx: Arc<FieldCtx>, factor: QuadFactor, matrix: Mat2, tau1: PermMap, tau2: PermMap) -> Result<Self> {
        check_factor(&factor, &ctx)?;
        check_char_poly(&matrix, &factor, &ctx)?;
        for t in [&tau1, &tau2] {
            if **t.ctx() != *ctx {
                return Err(Error::ContextMismatch);
            }
            if !t.is_permutation() {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(ConstructionSpec { ctx, factor, matrix, variant: Variant::General { tau1, tau2 } })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn factor(&self) -> &QuadFactor {
        &self.factor
    }

    pub fn r(&self) -> u64 {
        self.factor.r()
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    /// `τ₁ ∘ τ₂ = e` (for structured variants, `a₁ ∘ a₂ = e`).
    pub fn inverse_paired(&self) -> bool {
        match &self.variant {
            Variant::Type4(s) | Variant::Type5(s) => s.a1.compose(&s.a2).is_identity(),
            Variant::General { tau1, tau2 } => tau1.compose(tau2).map(|c| c.is_identity()).unwrap_or(false),
        }
    }

    pub fn claims(&self) -> Claims {
        let paired = self.inverse_paired();
        let cpp = match &self.variant {
            Variant::Type4(_) | Variant::Type5(_) => true,
            Variant::General { tau1, .. } => paired && tau1.is_additive(),
        };
        Claims { pp: true, cpp, r_regular: paired }
    }

    /// One fixed point and `(q^2 - 1)/r` cycles of length `r`.
    pub fn regular_cycle_structure(&self) -> CycleStructure {
        let r = self.r() as usize;
        let n = self.ctx.q2() as usize - 1;
        CycleStructure { fixed_points: 1, lengths: [(r, n / r)].into_iter().collect(), cycles: None }
    }
}

fn check_factor(factor: &QuadFactor, ctx: &FieldCtx) -> Result<()> {
    check_order_constraint(factor.r(), ctx)?;
    QuadFactor::reconstruct(ctx, factor.r(), factor.h0(), factor.h1(), factor.provenance())?;
    Ok(())
}

/// Tabulates `σ` and checks that it is a permutation.
pub fn build_sigma(spec: &ConstructionSpec) -> Result<PermMap> {
    let ctx = spec.ctx.clone();
    let sigma = match &spec.variant {
        Variant::Type4(s) | Variant::Type5(s) => {
            let c = ctx.clone();
            let [m1, m2, m3, m4] = spec.matrix.entries();
            PermMap::from_fn(ctx, |x1, x2| {
                let u = s.a2.apply(x1);
                let y1 = s.a1.apply(c.fq_add(c.fq_mul(m1, u), c.fq_mul(m2, x2)));
                let y2 = c.fq_add(c.fq_mul(m3, u), c.fq_mul(m4, x2));
                (y1, y2)
            })
        }
        Variant::General { tau1, tau2 } => {
            let linear = PermMap::from_matrix(ctx, &spec.matrix);
            tau1.compose(&linear.compose(tau2)?)?
        }
    };
    if !sigma.is_permutation() {
        return Err(Error::SpecInvariantViolated("σ is not a permutation".into()));
    }
    Ok(sigma)
}

/// `σ + e = left ∘ σ_inner ∘ right`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub left: PermMap,
    pub inner: Mat2,
    pub right: PermMap,
}

impl Decomposition {
    pub fn compose(&self) -> Result<PermMap> {
        let inner = PermMap::from_matrix(self.left.ctx().clone(), &self.inner);
        self.left.compose(&inner.compose(&self.right)?)
    }
}

/// The three factors of `σ + e` without checking the identity.
pub fn decomposition_parts(spec: &ConstructionSpec) -> Result<Decomposition> {
    let ctx = spec.ctx.clone();
    let h0 = spec.factor.h0();
    let inner = shifted_matrix(&spec.factor, &ctx);
    let (left, right) = match &spec.variant {
        Variant::Type4(s) => {
            let mh0 = ctx.fq_mul(s.m, h0);
            let mh0_inv = ctx.fq_inv(mh0).ok_or(Error::ZeroScalar)?;
            let a2_inv = s.a2.inverse();
            let c = ctx.clone();
            // (a1(x1) + a2⁻¹(x2), (m·h0)⁻¹·x1)
            let left = PermMap::from_fn(ctx.clone(), |x1, x2| {
                (c.fq_add(s.a1.apply(x1), a2_inv.apply(x2)), c.fq_mul(mh0_inv, x1))
            });
            // (m·h0·x2, a2(x1) - m·h0·x2)
            let right = PermMap::from_fn(ctx.clone(), |x1, x2| {
                let t = c.fq_mul(mh0, x2);
                (t, c.fq_sub(s.a2.apply(x1), t))
            });
            (left, right)
        }
        Variant::Type5(s) => {
            let m_inv = ctx.fq_inv(s.m).ok_or(Error::ZeroScalar)?;
            let a2_inv = s.a2.inverse();
            let c = ctx.clone();
            // (a1(x1) + a2⁻¹(x2), -m⁻¹·x2)
            let left = PermMap::from_fn(ctx.clone(), |x1, x2| {
                (c.fq_add(s.a1.apply(x1), a2_inv.apply(x2)), c.fq_neg(c.fq_mul(m_inv, x2)))
            });
            // (a2(x1) + m·x2, -m·x2)
            let right = PermMap::from_fn(ctx.clone(), |x1, x2| {
                let t = c.fq_mul(s.m, x2);
                (c.fq_add(s.a2.apply(x1), t), c.fq_neg(t))
            });
            (left, right)
        }
        Variant::General { .. } => {
            return Err(Error::SpecInvariantViolated("only type4 and type5 specs decompose".into()))
        }
    };
    Ok(Decomposition { left, inner, right })
}

/// Whether `sigma + e` equals the composed factors on every point and
/// `char_poly(M₁) = h(t - 1)`.
pub fn decomposition_matches(spec: &ConstructionSpec, sigma: &PermMap) -> Result<bool> {
    let parts = decomposition_parts(spec)?;
    let ctx = &spec.ctx;
    let shifted = spec.factor.poly().shift_by_minus_one(ctx)?;
    Ok(parts.inner.char_poly(ctx) == shifted && sigma.plus_identity() == parts.compose()?)
}

fn checked_decomposition(spec: &ConstructionSpec, kind: VariantKind) -> Result<Decomposition> {
    if spec.variant.kind() != kind {
        return Err(Error::SpecInvariantViolated(format!("expected a {kind} spec, got {}", spec.variant.kind())));
    }
    let sigma = build_sigma(spec)?;
    if !decomposition_matches(spec, &sigma)? {
        return Err(Error::SpecInvariantViolated("σ + e does not factor as expected".into()));
    }
    decomposition_parts(spec)
}

/// `σ + e = τ₃ ∘ σ_{M₁} ∘ τ₄` for a type-4 spec, checked pointwise.
pub fn decomposition_type4(spec: &ConstructionSpec) -> Result<Decomposition> {
    checked_decomposition(spec, VariantKind::Type4)
}

/// `σ + e = τ₅ ∘ σ_{M₁} ∘ τ₆` for a type-5 spec, checked pointwise.
pub fn decomposition_type5(spec: &ConstructionSpec) -> Result<Decomposition> {
    checked_decomposition(spec, VariantKind::Type5)
}

fn round_fn_table(ctx: &FieldCtx, p_fn: &[u32]) -> Result<()> {
    if p_fn.len() != ctx.q() as usize {
        return Err(Error::TableLength { expected: ctx.q() as usize, found: p_fn.len() });
    }
    if let Some(&bad) = p_fn.iter().find(|&&v| v >= ctx.q()) {
        return Err(Error::InvalidElement { level: Level::Fq, index: bad as u64 });
    }
    Ok(())
}

/// Feistel round `(x₁, x₂) ↦ (x₂, p(x₂) + x₁)`.
pub fn feistel_omega(ctx: Arc<FieldCtx>, p_fn: &[u32]) -> Result<PermMap> {
    round_fn_table(&ctx, p_fn)?;
    let c = ctx.clone();
    Ok(PermMap::from_fn(ctx, |x1, x2| (x2, c.fq_add(p_fn[x2 as usize], x1))))
}

/// L-MISTY round `(x₁, x₂) ↦ (x₂, p(x₁) - x₂)`.
pub fn misty_phi(ctx: Arc<FieldCtx>, p_fn: &[u32]) -> Result<PermMap> {
    round_fn_table(&ctx, p_fn)?;
    let c = ctx.clone();
    Ok(PermMap::from_fn(ctx, |x1, x2| (x2, c.fq_sub(p_fn[x1 as usize], x2))))
}

/// R-MISTY round `(x₁, x₂) ↦ (p(x₂), p(x₂) + x₁)`.
pub fn misty_psi(ctx: Arc<FieldCtx>, p_fn: &[u32]) -> Result<PermMap> {
    round_fn_table(&ctx, p_fn)?;
    let c = ctx.clone();
    Ok(PermMap::from_fn(ctx, |x1, x2| {
        let v = p_fn[x2 as usize];
        (v, c.fq_add(v, x1))
    }))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::poly::{quadratic_factor, Selector};

    fn f5() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(5, 1, None, None).unwrap())
    }

    #[test]
    fn type4_matrices() {
        let ctx = f5();
        let h3 = quadratic_factor(3, &ctx, None).unwrap();
        assert_eq!(matrix_type4(&h3, 1, &ctx).unwrap().entries(), [4, 1, 4, 0]);
        let h12 = all_h(&ctx, 12, (2, 4));
        assert_eq!(matrix_type4(&h12, 1, &ctx).unwrap().entries(), [1, 2, 4, 2]);
        let h4 = quadratic_factor(4, &ctx, None).unwrap();
        assert_eq!(matrix_type4(&h4, 2, &ctx).unwrap().entries(), [4, 4, 2, 1]);
        assert_eq!(matrix_type4(&h4, 0, &ctx), Err(Error::ZeroScalar));
    }

    #[test]
    fn type5_matrices() {
        let ctx = f5();
        let h3 = quadratic_factor(3, &ctx, None).unwrap();
        assert_eq!(matrix_type5(&h3, 1, &ctx).unwrap().entries(), [0, 1, 4, 4]);
        let h4 = quadratic_factor(4, &ctx, None).unwrap();
        assert_eq!(matrix_type5(&h4, 1, &ctx).unwrap().entries(), [1, 2, 4, 4]);
        assert_eq!(matrix_type5(&h4, 0, &ctx), Err(Error::ZeroScalar));
    }

    fn all_h(ctx: &FieldCtx, r: u64, h1h0: (u32, u32)) -> QuadFactor {
        crate::poly::all_quadratic_factors(r, ctx).unwrap().into_iter().find(|h| (h.h1(), h.h0()) == h1h0).unwrap()
    }

    #[test]
    fn running_example_is_sigma_m() {
        let ctx = f5();
        let h = quadratic_factor(3, &ctx, None).unwrap();
        let id = CoordPerm::identity(5);
        let spec = ConstructionSpec::type4(ctx.clone(), h, 1, id.clone(), id).unwrap();
        let sigma = build_sigma(&spec).unwrap();
        assert_eq!(sigma, PermMap::from_matrix(ctx, &Mat2::raw([4, 1, 4, 0])));
        let cs = sigma.cycle_structure().unwrap();
        assert_eq!((cs.fixed_points, cs.lengths), (1, BTreeMap::from([(3, 8)])));
        assert!(spec.claims().r_regular);
    }

    #[test]
    fn cube_map_type5_is_cpp() {
        let ctx = f5();
        let h = quadratic_factor(4, &ctx, None).unwrap();
        let cube = CoordPerm::monomial(&ctx, 3).unwrap();
        for m in [1, 2] {
            let spec = ConstructionSpec::type5(ctx.clone(), h, m, cube.clone(), cube.clone()).unwrap();
            assert!(spec.inverse_paired());
            let sigma = build_sigma(&spec).unwrap();
            assert!(sigma.is_cpp());
            assert!(sigma.is_r_regular(4).unwrap());
        }
    }

    #[test]
    fn decompositions_hold() {
        let ctx = f5();
        let h3 = quadratic_factor(3, &ctx, None).unwrap();
        let id = CoordPerm::identity(5);
        let cube = CoordPerm::monomial(&ctx, 3).unwrap();
        for (a1, a2) in [(id.clone(), id.clone()), (cube.clone(), cube.clone())] {
            let spec = ConstructionSpec::type4(ctx.clone(), h3, 1, a1, a2).unwrap();
            let d = decomposition_type4(&spec).unwrap();
            assert!(d.left.is_permutation() && d.right.is_permutation());
        }
        let h4 = quadratic_factor(4, &ctx, None).unwrap();
        let spec = ConstructionSpec::type5(ctx.clone(), h4, 1, id.clone(), id.clone()).unwrap();
        let d = decomposition_type5(&spec).unwrap();
        assert!(d.left.is_permutation() && d.right.is_permutation());
        assert!(decomposition_type4(&spec).is_err());

        let f7 = Arc::new(FieldCtx::new(7, 1, None, None).unwrap());
        let h = quadratic_factor(3, &f7, None).unwrap();
        let fifth = CoordPerm::monomial(&f7, 5).unwrap();
        let spec = ConstructionSpec::type5(f7.clone(), h, 3, fifth.clone(), fifth.inverse()).unwrap();
        decomposition_type5(&spec).unwrap();
    }

    #[test]
    fn shifted_matrix_char_poly() {
        let ctx = f5();
        let h = quadratic_factor(3, &ctx, None).unwrap();
        let m1 = shifted_matrix(&h, &ctx);
        // h(t - 1) = t^2 - t + 1
        assert_eq!(m1.char_poly(&ctx).coeffs(), &[1, 4, 1]);
    }

    #[test]
    fn general_variant_conjugation() {
        let ctx = f5();
        let h = quadratic_factor(12, &ctx, Some(Selector::Single(1))).unwrap();
        let m = Mat2::raw([0, ctx.fq_neg(h.h0()), 1, ctx.fq_neg(h.h1())]);
        let tau = PermMap::from_table(ctx.clone(), seeded_shuffle(25, 9)).unwrap();
        let spec = ConstructionSpec::general(ctx.clone(), h, m, tau.clone(), tau.invert().unwrap()).unwrap();
        let sigma = build_sigma(&spec).unwrap();
        assert!(sigma.is_r_regular(12).unwrap());
        assert!(spec.claims().r_regular);
        let bad = ConstructionSpec::general(ctx.clone(), h, Mat2::identity(), tau.clone(), tau);
        assert!(matches!(bad, Err(Error::SpecInvariantViolated(_))));
    }

    #[test]
    fn feistel_examples() {
        let f2 = Arc::new(FieldCtx::new(2, 1, None, None).unwrap());
        assert!(feistel_omega(f2, &[0, 1]).unwrap().is_cpp());
        let ctx = f5();
        let cube = CoordPerm::monomial(&ctx, 3).unwrap();
        assert!(misty_phi(ctx.clone(), cube.table()).unwrap().is_cpp());
        assert!(!misty_psi(ctx.clone(), &[0; 5]).unwrap().is_permutation());
        assert!(feistel_omega(ctx, &[0; 4]).is_err());
    }

    #[test]
    fn coord_perm_basics() {
        let ctx = f5();
        assert!(CoordPerm::monomial(&ctx, 2).is_err());
        assert_eq!(CoordPerm::smallest_monomial_exponent(5), 3);
        assert_eq!(CoordPerm::smallest_monomial_exponent(13), 5);
        let r = CoordPerm::random(5, 42);
        assert!(r.compose(&r.inverse()).is_identity());
        assert_eq!(r, CoordPerm::random(5, 42));
        assert!(CoordPerm::scaling(&ctx, 3).unwrap().is_additive(&ctx));
        assert!(!CoordPerm::monomial(&ctx, 3).unwrap().is_additive(&ctx));
        assert_eq!(CoordPerm::from_table(3, vec![0, 0, 1]), Err(Error::NotAPermutation));
    }

    #[test]
    fn splitmix_stream_is_the_reference_one() {
        // first outputs of SplitMix64 seeded with 0
        let mut rng = SplitMix64::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(rng.next_u64(), 0x6e789e6aa1b965f4);
    }
}
