//! 2×2 matrices over `F_q`, viewed as linear maps `v ↦ Mv` on `F_q^2`.

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx, Level};
use crate::poly::Poly;

/// Row-major `[[m1, m2], [m3, m4]]`, entries are `F_q` indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    m: [u32; 4],
}

impl Mat2 {
    pub fn new(ctx: &FieldCtx, rows: [[Elt; 2]; 2]) -> Result<Self> {
        let flat = [rows[0][0], rows[0][1], rows[1][0], rows[1][1]];
        if let Some(bad) = flat.iter().find(|e| e.level() != Level::Fq) {
            return Err(Error::FieldLevelMismatch { expected: Level::Fq, found: bad.level() });
        }
        Self::from_indices(ctx, flat.map(Elt::index))
    }

    /// From row-major canonical indices.
    pub fn from_indices(ctx: &FieldCtx, m: [u32; 4]) -> Result<Self> {
        if let Some(&bad) = m.iter().find(|&&c| c >= ctx.q()) {
            return Err(Error::InvalidElement { level: Level::Fq, index: bad as u64 });
        }
        Ok(Mat2 { m })
    }

    pub(crate) fn raw(m: [u32; 4]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        Mat2 { m: [1, 0, 0, 1] }
    }

    pub fn zero() -> Self {
        Mat2 { m: [0; 4] }
    }

    pub fn scalar(c: u32) -> Self {
        Mat2 { m: [c, 0, 0, c] }
    }

    /// `[m1, m2, m3, m4]`.
    pub fn entries(&self) -> [u32; 4] {
        self.m
    }

    pub fn entry(&self, ctx: &FieldCtx, row: usize, col: usize) -> Elt {
        ctx.elt_unchecked(Level::Fq, self.m[2 * row + col])
    }

    #[inline]
    pub fn apply(&self, ctx: &FieldCtx, (x1, x2): (u32, u32)) -> (u32, u32) {
        let [a, b, c, d] = self.m;
        (ctx.fq_add(ctx.fq_mul(a, x1), ctx.fq_mul(b, x2)), ctx.fq_add(ctx.fq_mul(c, x1), ctx.fq_mul(d, x2)))
    }

    pub fn add(&self, other: &Mat2, ctx: &FieldCtx) -> Mat2 {
        let mut m = [0; 4];
        for (i, v) in m.iter_mut().enumerate() {
            *v = ctx.fq_add(self.m[i], other.m[i]);
        }
        Mat2 { m }
    }

    pub fn mul(&self, other: &Mat2, ctx: &FieldCtx) -> Mat2 {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        let dot = |x: u32, y: u32, z: u32, w: u32| ctx.fq_add(ctx.fq_mul(x, y), ctx.fq_mul(z, w));
        Mat2 { m: [dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)] }
    }

    pub fn scale(&self, c: u32, ctx: &FieldCtx) -> Mat2 {
        Mat2 { m: self.m.map(|x| ctx.fq_mul(c, x)) }
    }

    pub fn trace(&self, ctx: &FieldCtx) -> u32 {
        ctx.fq_add(self.m[0], self.m[3])
    }

    pub fn det(&self, ctx: &FieldCtx) -> u32 {
        let [a, b, c, d] = self.m;
        ctx.fq_sub(ctx.fq_mul(a, d), ctx.fq_mul(b, c))
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.det(ctx) != 0
    }

    /// `det(tI - M) = t^2 - tr(M)·t + det(M)`.
    pub fn char_poly(&self, ctx: &FieldCtx) -> Poly {
        Poly::from_raw(Level::Fq, vec![self.det(ctx), ctx.fq_neg(self.trace(ctx)), 1])
    }

    /// Substitutes the matrix into an `F_q` polynomial (Horner).
    pub fn eval_poly(&self, f: &Poly, ctx: &FieldCtx) -> Result<Mat2> {
        if f.level() != Level::Fq && f.level() != Level::Fp {
            return Err(Error::FieldLevelMismatch { expected: Level::Fq, found: f.level() });
        }
        Ok(f.coeffs().iter().rev().fold(Mat2::zero(), |acc, &c| acc.mul(self, ctx).add(&Mat2::scalar(c), ctx)))
    }

    /// Whether `P_M(M) = 0`.
    pub fn verify_cayley_hamilton(&self, ctx: &FieldCtx) -> bool {
        self.eval_poly(&self.char_poly(ctx), ctx).map(|z| z == Mat2::zero()).unwrap_or(false)
    }

    /// `t - c` when `M = cI`, otherwise the characteristic polynomial.
    pub fn minimal_poly(&self, ctx: &FieldCtx) -> Poly {
        let [a, b, c, d] = self.m;
        if b == 0 && c == 0 && a == d {
            Poly::from_raw(Level::Fq, vec![ctx.fq_neg(a), 1])
        } else {
            self.char_poly(ctx)
        }
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Result<Mat2> {
        let inv = ctx.fq_inv(self.det(ctx)).ok_or(Error::SingularMatrix)?;
        let [a, b, c, d] = self.m;
        Ok(Mat2 { m: [d, ctx.fq_neg(b), ctx.fq_neg(c), a] }.scale(inv, ctx))
    }

    /// `P^{-1} M P`.
    pub fn conjugate(&self, p: &Mat2, ctx: &FieldCtx) -> Result<Mat2> {
        let conj = p.inverse(ctx)?.mul(self, ctx).mul(p, ctx);
        debug_assert_eq!(conj.char_poly(ctx), self.char_poly(ctx));
        Ok(conj)
    }
}
