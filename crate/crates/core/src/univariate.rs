//! From bivariate maps on `F_q^2` back to polynomials in `F_{q^2}[x]`.
//!
//! With `{1, α}` as an `F_q` basis of `F_{q^2}` and `{β₁, β₂}` its trace-dual
//! basis, the coordinates of `x = x₁ + α x₂` are `x_i = Tr(x β_i)`. Any map on
//! `F_{q^2}` is a polynomial function of degree `< q^2`; [`to_univariate`]
//! recovers it by Newton interpolation.

use crate::construct::{ConstructionSpec, Variant};
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx, Level};
use crate::linmap::Mat2;
use crate::permcycle::PermMap;
use crate::poly::Poly;

/// Largest domain [`to_univariate`] accepts.
pub const INTERPOLATION_LIMIT: u64 = 1 << 12;

/// Largest `q^2` for which [`trace_form_polynomial`] expands symbolically.
pub const SYMBOLIC_LIMIT: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub alpha: Elt,
    pub beta1: Elt,
    pub beta2: Elt,
}

/// Solves `Tr(α_i β_j) = δ_ij` for `α₁ = 1`, `α₂ = α`.
pub fn dual_basis(ctx: &FieldCtx) -> DualBasis {
    let alpha = ctx.elt_unchecked(Level::Fq2, ctx.q());
    let tr = |x: u32| ctx.trace_q2_to_q(ctx.elt_unchecked(Level::Fq2, x)).unwrap().index();
    let t1 = tr(1);
    let ta = tr(alpha.index());
    let taa = tr(ctx.fq2_mul(alpha.index(), alpha.index()));
    // The Gram matrix of the trace form is symmetric, so β_j has coordinates
    // given by column j of its inverse.
    let gram = Mat2::raw([t1, ta, ta, taa]);
    let [g11, g12, g21, g22] = gram.inverse(ctx).expect("trace form is nondegenerate").entries();
    let basis = DualBasis {
        alpha,
        beta1: ctx.elt_unchecked(Level::Fq2, ctx.join(g11, g21)),
        beta2: ctx.elt_unchecked(Level::Fq2, ctx.join(g12, g22)),
    };
    debug_assert!(basis.is_dual(ctx));
    basis
}

impl DualBasis {
    /// The Kronecker-delta property `Tr(α_i β_j) = δ_ij`.
    pub fn is_dual(&self, ctx: &FieldCtx) -> bool {
        let one = ctx.one(Level::Fq2);
        [(one, self.beta1, 1), (one, self.beta2, 0), (self.alpha, self.beta1, 0), (self.alpha, self.beta2, 1)]
            .iter()
            .all(|&(a, b, want)| {
                let t = ctx.trace_q2_to_q(ctx.mul(a, b).unwrap()).unwrap();
                t.index() == want
            })
    }

    /// `(Tr(x β₁), Tr(x β₂))`.
    pub fn coordinates(&self, ctx: &FieldCtx, x: Elt) -> Result<(Elt, Elt)> {
        let x1 = ctx.trace_q2_to_q(ctx.mul(x, self.beta1)?)?;
        let x2 = ctx.trace_q2_to_q(ctx.mul(x, self.beta2)?)?;
        Ok((x1, x2))
    }
}

/// Newton interpolation through `(i, values[i])` for every canonical index
/// `i` of `level`, returned in monomial form.
pub(crate) fn interpolate_all(ctx: &FieldCtx, level: Level, values: &[u32]) -> Poly {
    let ar = ctx.arith(level);
    let n = values.len();
    debug_assert_eq!(n as u32, ar.size());
    // divided differences, in place
    let mut c = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = ar.sub(i as u32, (i - j) as u32);
            let inv = ar.inv(den).expect("nodes are distinct");
            c[i] = ar.mul(ar.sub(c[i], c[i - 1]), inv);
        }
    }
    // Horner on the Newton basis
    let mut acc = vec![c[n - 1]];
    for i in (0..n - 1).rev() {
        let node = ar.neg(i as u32);
        let mut next = vec![0; acc.len() + 1];
        for (k, &a) in acc.iter().enumerate() {
            next[k + 1] = ar.add(next[k + 1], a);
            next[k] = ar.add(next[k], ar.mul(a, node));
        }
        next[0] = ar.add(next[0], c[i]);
        acc = next;
    }
    Poly::from_raw(level, acc)
}

/// The unique polynomial of degree `< q^2` agreeing with `f` on every point.
pub fn to_univariate(f: &PermMap) -> Result<Poly> {
    let ctx = f.ctx();
    let size = ctx.q2() as u64;
    if size > INTERPOLATION_LIMIT {
        return Err(Error::InterpolationTooLarge { size, limit: INTERPOLATION_LIMIT });
    }
    let poly = interpolate_all(ctx, Level::Fq2, f.table());
    if (0..ctx.q2()).any(|x| poly.eval_raw(x, ctx) != f.apply(x)) {
        return Err(Error::SpecInvariantViolated("interpolant disagrees with the table".into()));
    }
    Ok(poly)
}

/// Evaluates the trace form of a structured `σ` at `x`:
///
/// ```text
/// a₁(m₁ a₂(Tr(xβ₁)) + m₂ Tr(xβ₂)) + α (m₃ a₂(Tr(xβ₁)) + m₄ Tr(xβ₂))
/// ```
pub fn eval_trace_form(spec: &ConstructionSpec, basis: &DualBasis, x: Elt) -> Result<Elt> {
    let s = match spec.variant() {
        Variant::Type4(s) | Variant::Type5(s) => s,
        Variant::General { .. } => {
            return Err(Error::SpecInvariantViolated("trace form needs a type4 or type5 spec".into()))
        }
    };
    let ctx = spec.ctx();
    let (x1, x2) = basis.coordinates(ctx, x)?;
    let [m1, m2, m3, m4] = spec.matrix().entries();
    let u = s.a2.apply(x1.index());
    let y1 = s.a1.apply(ctx.fq_add(ctx.fq_mul(m1, u), ctx.fq_mul(m2, x2.index())));
    let y2 = ctx.fq_add(ctx.fq_mul(m3, u), ctx.fq_mul(m4, x2.index()));
    let y1 = ctx.embed(ctx.elt_unchecked(Level::Fq, y1), Level::Fq2)?;
    let y2 = ctx.embed(ctx.elt_unchecked(Level::Fq, y2), Level::Fq2)?;
    ctx.add(y1, ctx.mul(basis.alpha, y2)?)
}

/// Multiplies two reduced polynomial functions on `F_{q^2}` and reduces the
/// product modulo `x^{q^2} - x`.
fn mul_reduced(a: &[u32], b: &[u32], ctx: &FieldCtx) -> Vec<u32> {
    let ar = ctx.arith(Level::Fq2);
    let n = ctx.q2() as usize;
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let mut e = i + j;
            if e >= n {
                e -= n - 1;
            }
            out[e] = ar.add(out[e], ar.mul(x, y));
        }
    }
    out
}

fn add_scaled(acc: &mut [u32], other: &[u32], c: u32, ctx: &FieldCtx) {
    let ar = ctx.arith(Level::Fq2);
    for (a, &b) in acc.iter_mut().zip(other) {
        *a = ar.add(*a, ar.mul(c, b));
    }
}

/// `A(g(x))` for `A` over `F_q` and reduced `g`.
fn compose_reduced(outer: &Poly, inner: &[u32], ctx: &FieldCtx) -> Vec<u32> {
    let n = ctx.q2() as usize;
    let mut acc = vec![0; n];
    for &c in outer.coeffs().iter().rev() {
        acc = mul_reduced(&acc, inner, ctx);
        acc[0] = ctx.arith(Level::Fq2).add(acc[0], c);
    }
    acc
}

/// Symbolic expansion of the trace form of a structured `σ`: `a₁`, `a₂` are
/// interpolated over `F_q`, substituted into the trace expression and reduced
/// modulo `x^{q^2} - x`. Agrees with [`to_univariate`] of `build_sigma(spec)`.
pub fn trace_form_polynomial(spec: &ConstructionSpec, basis: &DualBasis) -> Result<Poly> {
    let s = spec
        .variant()
        .structured()
        .ok_or_else(|| Error::SpecInvariantViolated("trace form needs a type4 or type5 spec".into()))?;
    let ctx = spec.ctx();
    let size = ctx.q2() as u64;
    if size > SYMBOLIC_LIMIT {
        return Err(Error::InterpolationTooLarge { size, limit: SYMBOLIC_LIMIT });
    }
    let n = size as usize;
    let q = ctx.q() as usize;
    let a1 = interpolate_all(ctx, Level::Fq, s.a1.table());
    let a2 = interpolate_all(ctx, Level::Fq, s.a2.table());

    // L_j(x) = β_j x + β_j^q x^q
    let linear = |beta: Elt| {
        let mut l = vec![0; n];
        l[1] = beta.index();
        l[q] = ctx.fq2_frob(beta.index());
        l
    };
    let l1 = linear(basis.beta1);
    let l2 = linear(basis.beta2);
    let [m1, m2, m3, m4] = spec.matrix().entries();

    let a2_l1 = compose_reduced(&a2, &l1, ctx);
    let mut first_arg = vec![0; n];
    add_scaled(&mut first_arg, &a2_l1, m1, ctx);
    add_scaled(&mut first_arg, &l2, m2, ctx);
    let first = compose_reduced(&a1, &first_arg, ctx);

    let mut second = vec![0; n];
    add_scaled(&mut second, &a2_l1, m3, ctx);
    add_scaled(&mut second, &l2, m4, ctx);

    let mut out = first;
    add_scaled(&mut out, &second, basis.alpha.index(), ctx);
    Ok(Poly::from_raw(Level::Fq2, out))
}
