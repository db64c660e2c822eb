//! Arithmetic in `F_p`, `F_q = F_p[y]/(g(y))` and `F_{q^2} = F_q[α]/(h_α(α))`.
//!
//! Every element is identified by a canonical index. An element of `F_q` with
//! coordinates `(c_0, …, c_{k-1})` over `F_p` has index `Σ c_i p^i`; an element
//! `x_1 + α x_2` of `F_{q^2}` has index `idx(x_1) + q·idx(x_2)`. The embeddings
//! `F_p ⊂ F_q ⊂ F_{q^2}` are therefore the identity on indices.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_factors};

/// Largest admissible `q^2`. All verification in this crate is exhaustive.
pub const FIELD_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Fp,
    Fq,
    Fq2,
}

/// A field element tagged with the level it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elt {
    level: Level,
    idx: u32,
}

impl Elt {
    pub fn level(self) -> Level {
        self.level
    }

    /// Canonical index of the element.
    pub fn index(self) -> u32 {
        self.idx
    }

    pub fn is_zero(self) -> bool {
        self.idx == 0
    }
}

/// Serialisable description of a field context. `modulus_q` has coefficients
/// in `[0, p)`, `modulus_q2` has `F_q` coefficients given by canonical index
/// (which coincides with `[0, p)` when `k = 1`). Both are low → high and monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus_q: Vec<u32>,
    pub modulus_q2: Vec<u32>,
}

/// A finite field `F_q` together with its quadratic extension `F_{q^2}`.
///
/// Immutable after construction. Multiplication in `F_q` goes through
/// discrete log tables and addition through a dense `q × q` table.
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus_q: Vec<u32>,
    modulus_q2: [u32; 3],
    add: Vec<u32>,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    fq2_generator: OnceLock<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus_q", &self.modulus_q)
            .field("modulus_q2", &self.modulus_q2)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.k == other.k
            && self.modulus_q == other.modulus_q
            && self.modulus_q2 == other.modulus_q2
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_{p^k}` and its quadratic extension. Missing moduli are
    /// replaced by the smallest monic irreducible polynomial of the required
    /// degree, where polynomials are ordered by the canonical index of their
    /// coefficient vector below the leading term.
    pub fn new(p: u32, k: u32, modulus_q: Option<Vec<u32>>, modulus_q2: Option<[u32; 3]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        let q2 = q.saturating_mul(q);
        if q2 > FIELD_CAP {
            return Err(Error::CapExceeded { size: q2, cap: FIELD_CAP });
        }
        let q = q as u32;

        let modulus_q = match modulus_q {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(format!(
                        "expected monic degree-{k} polynomial over F_{p}, got {m:?}"
                    )));
                }
                if !fp_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(format!("{m:?} over F_{p}")));
                }
                m
            }
            None => (0..q)
                .map(|n| {
                    let mut m = digits(n, p, k as usize);
                    m.push(1);
                    m
                })
                .find(|m| fp_is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let (add, neg) = additive_tables(p, k, q);
        let (exp, log) = multiplicative_tables(p, q, &modulus_q);

        let mut ctx =
            FieldCtx { p, k, q, modulus_q, modulus_q2: [0, 0, 1], add, neg, exp, log, fq2_generator: OnceLock::new() };

        ctx.modulus_q2 = match modulus_q2 {
            Some(m) => {
                if m[2] != 1 || m[0] >= q || m[1] >= q {
                    return Err(Error::BadModulus(format!("expected monic quadratic over F_{q}, got {m:?}")));
                }
                if ctx.quadratic_has_root(m[0], m[1]) {
                    return Err(Error::ReducibleModulus(format!("{m:?} over F_{q}")));
                }
                m
            }
            None => (0..q * q)
                .map(|n| [n % q, n / q, 1])
                .find(|m| !ctx.quadratic_has_root(m[0], m[1]))
                .expect("an irreducible quadratic exists"),
        };
        Ok(ctx)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let m2: [u32; 3] = spec.modulus_q2.as_slice().try_into().map_err(|_| {
            Error::BadModulus(format!("modulus_q2 must have 3 coefficients, got {:?}", spec.modulus_q2))
        })?;
        let ctx = Self::new(spec.p, spec.k, Some(spec.modulus_q.clone()), Some(m2))?;
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, k: self.k, modulus_q: self.modulus_q.clone(), modulus_q2: self.modulus_q2.to_vec() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q^2`, the number of points of `F_{q^2}`.
    pub fn q2(&self) -> u32 {
        self.q * self.q
    }

    pub fn modulus_q(&self) -> &[u32] {
        &self.modulus_q
    }

    pub fn modulus_q2(&self) -> [u32; 3] {
        self.modulus_q2
    }

    pub fn size(&self, level: Level) -> u32 {
        match level {
            Level::Fp => self.p,
            Level::Fq => self.q,
            Level::Fq2 => self.q * self.q,
        }
    }

    /// Number of `F_p` coordinates of an element at `level`.
    pub fn degree(&self, level: Level) -> usize {
        match level {
            Level::Fp => 1,
            Level::Fq => self.k as usize,
            Level::Fq2 => 2 * self.k as usize,
        }
    }

    pub fn arith(&self, level: Level) -> Arith<'_> {
        Arith { ctx: self, level }
    }

    pub fn elt(&self, level: Level, idx: u32) -> Result<Elt> {
        if idx >= self.size(level) {
            return Err(Error::InvalidElement { level, index: idx as u64 });
        }
        Ok(Elt { level, idx })
    }

    pub(crate) fn elt_unchecked(&self, level: Level, idx: u32) -> Elt {
        debug_assert!(idx < self.size(level));
        Elt { level, idx }
    }

    pub fn zero(&self, level: Level) -> Elt {
        Elt { level, idx: 0 }
    }

    pub fn one(&self, level: Level) -> Elt {
        Elt { level, idx: 1 }
    }

    /// Builds an element from its `F_p` coordinates, low → high.
    pub fn from_coords(&self, level: Level, coords: &[u32]) -> Result<Elt> {
        let deg = self.degree(level);
        if coords.len() != deg {
            return Err(Error::InvalidElement { level, index: u64::MAX });
        }
        let mut idx: u64 = 0;
        for &c in coords.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidElement { level, index: c as u64 });
            }
            idx = idx * self.p as u64 + c as u64;
        }
        Ok(Elt { level, idx: idx as u32 })
    }

    pub fn coords(&self, x: Elt) -> Vec<u32> {
        digits(x.idx, self.p, self.degree(x.level))
    }

    /// Reinterprets `x` at a higher (or equal) level.
    pub fn embed(&self, x: Elt, level: Level) -> Result<Elt> {
        if level < x.level {
            return self.restrict(x, level);
        }
        Ok(Elt { level, idx: x.idx })
    }

    /// Views `x` at a lower level, failing if it does not lie in the subfield.
    pub fn restrict(&self, x: Elt, level: Level) -> Result<Elt> {
        if x.idx >= self.size(level) {
            return Err(Error::InvalidElement { level, index: x.idx as u64 });
        }
        Ok(Elt { level, idx: x.idx })
    }

    fn same_level(&self, a: Elt, b: Elt) -> Result<Level> {
        if a.level != b.level {
            return Err(Error::FieldLevelMismatch { expected: a.level, found: b.level });
        }
        Ok(a.level)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Result<Elt> {
        let l = self.same_level(a, b)?;
        Ok(Elt { level: l, idx: self.arith(l).add(a.idx, b.idx) })
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Result<Elt> {
        let l = self.same_level(a, b)?;
        Ok(Elt { level: l, idx: self.arith(l).sub(a.idx, b.idx) })
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Result<Elt> {
        let l = self.same_level(a, b)?;
        Ok(Elt { level: l, idx: self.arith(l).mul(a.idx, b.idx) })
    }

    pub fn neg(&self, a: Elt) -> Elt {
        Elt { level: a.level, idx: self.arith(a.level).neg(a.idx) }
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        let idx = self.arith(a.level).inv(a.idx).ok_or(Error::DivisionByZero)?;
        Ok(Elt { level: a.level, idx })
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        self.mul(a, self.inv(b)?)
    }

    /// `a^e`; a negative exponent inverts first.
    pub fn pow(&self, a: Elt, e: i64) -> Result<Elt> {
        let base = if e < 0 { self.inv(a)? } else { a };
        Ok(Elt { level: a.level, idx: self.arith(a.level).pow(base.idx, e.unsigned_abs()) })
    }

    /// `x^q` for `x ∈ F_{q^2}`.
    pub fn frobenius(&self, x: Elt) -> Result<Elt> {
        self.expect_level(x, Level::Fq2)?;
        Ok(Elt { level: Level::Fq2, idx: self.fq2_frob(x.idx) })
    }

    /// `Tr(x) = x + x^q`, returned as an element of `F_q`.
    pub fn trace_q2_to_q(&self, x: Elt) -> Result<Elt> {
        self.expect_level(x, Level::Fq2)?;
        let t = self.fq2_add(x.idx, self.fq2_frob(x.idx));
        assert!(t < self.q, "trace left F_q");
        Ok(Elt { level: Level::Fq, idx: t })
    }

    /// `N(x) = x^{q+1}`, returned as an element of `F_q`.
    pub fn norm_q2_to_q(&self, x: Elt) -> Result<Elt> {
        self.expect_level(x, Level::Fq2)?;
        Ok(Elt { level: Level::Fq, idx: self.fq2_norm(x.idx) })
    }

    fn expect_level(&self, x: Elt, level: Level) -> Result<()> {
        if x.level != level {
            return Err(Error::FieldLevelMismatch { expected: level, found: x.level });
        }
        Ok(())
    }

    /// The first element, in canonical index order, that generates the
    /// multiplicative group of `level`.
    pub fn primitive_element(&self, level: Level) -> Elt {
        let idx = match level {
            Level::Fq2 => *self.fq2_generator.get_or_init(|| self.scan_generator(Level::Fq2)),
            Level::Fq if self.q > 2 => self.exp[1],
            _ => self.scan_generator(level),
        };
        Elt { level, idx }
    }

    fn scan_generator(&self, level: Level) -> u32 {
        let ar = self.arith(level);
        let order = ar.size() as u64 - 1;
        let factors = prime_factors(order);
        (1..ar.size())
            .find(|&g| factors.iter().all(|&l| ar.pow(g, order / l) != 1))
            .expect("finite fields have cyclic multiplicative groups")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elt) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ar = self.arith(x.level);
        let mut n = ar.size() as u64 - 1;
        for l in prime_factors(n) {
            while n.is_multiple_of(l) && ar.pow(x.idx, n / l) == 1 {
                n /= l;
            }
        }
        Ok(n)
    }

    /// An element of multiplicative order exactly `n`: in `F_q` when
    /// `n | q - 1`, otherwise in `F_{q^2}` when `n | q^2 - 1`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Elt> {
        let q = self.q as u64;
        let level = if n > 0 && (q - 1).is_multiple_of(n) {
            Level::Fq
        } else if n > 0 && (q * q - 1).is_multiple_of(n) {
            Level::Fq2
        } else {
            return Err(Error::OrderNotDivisible { n, order: q * q - 1 });
        };
        let g = self.primitive_element(level);
        let group = self.size(level) as u64 - 1;
        Ok(Elt { level, idx: self.arith(level).pow(g.idx, group / n) })
    }

    // ---- raw arithmetic on canonical indices ----

    #[inline]
    pub(crate) fn fq_add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub(crate) fn fq_neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn fq_sub(&self, a: u32, b: u32) -> u32 {
        self.fq_add(a, self.fq_neg(b))
    }

    #[inline]
    pub(crate) fn fq_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn fq_inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    #[inline]
    fn split(&self, x: u32) -> (u32, u32) {
        (x % self.q, x / self.q)
    }

    #[inline]
    pub(crate) fn join(&self, x1: u32, x2: u32) -> u32 {
        x1 + self.q * x2
    }

    #[inline]
    pub(crate) fn fq2_add(&self, a: u32, b: u32) -> u32 {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        self.join(self.fq_add(a0, b0), self.fq_add(a1, b1))
    }

    #[inline]
    fn fq2_neg(&self, a: u32) -> u32 {
        let (a0, a1) = self.split(a);
        self.join(self.fq_neg(a0), self.fq_neg(a1))
    }

    // α^2 = -c1 α - c0
    #[inline]
    pub(crate) fn fq2_mul(&self, a: u32, b: u32) -> u32 {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        let [c0, c1, _] = self.modulus_q2;
        let hi = self.fq_mul(a1, b1);
        let r0 = self.fq_sub(self.fq_mul(a0, b0), self.fq_mul(c0, hi));
        let cross = self.fq_add(self.fq_mul(a0, b1), self.fq_mul(a1, b0));
        let r1 = self.fq_sub(cross, self.fq_mul(c1, hi));
        self.join(r0, r1)
    }

    // α^q = -c1 - α
    #[inline]
    pub(crate) fn fq2_frob(&self, a: u32) -> u32 {
        let (a0, a1) = self.split(a);
        let c1 = self.modulus_q2[1];
        self.join(self.fq_sub(a0, self.fq_mul(c1, a1)), self.fq_neg(a1))
    }

    #[inline]
    fn fq2_norm(&self, a: u32) -> u32 {
        let n = self.fq2_mul(a, self.fq2_frob(a));
        debug_assert!(n < self.q);
        n
    }

    #[inline]
    fn fq2_inv(&self, a: u32) -> Option<u32> {
        let n = self.fq_inv(self.fq2_norm(a))?;
        Some(self.fq2_mul(self.fq2_frob(a), n))
    }

    fn quadratic_has_root(&self, c0: u32, c1: u32) -> bool {
        (0..self.q).any(|t| {
            let v = self.fq_add(self.fq_mul(t, self.fq_add(t, c1)), c0);
            v == 0
        })
    }
}

/// Index-level arithmetic for one field level. Operands are canonical
/// indices and are assumed to be in range.
#[derive(Clone, Copy)]
pub struct Arith<'a> {
    ctx: &'a FieldCtx,
    level: Level,
}

impl<'a> Arith<'a> {
    pub fn level(self) -> Level {
        self.level
    }

    pub fn ctx(self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn size(self) -> u32 {
        self.ctx.size(self.level)
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        match self.level {
            Level::Fq2 => self.ctx.fq2_add(a, b),
            _ => self.ctx.fq_add(a, b),
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        match self.level {
            Level::Fq2 => self.ctx.fq2_neg(a),
            _ => self.ctx.fq_neg(a),
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        match self.level {
            Level::Fq2 => self.ctx.fq2_mul(a, b),
            _ => self.ctx.fq_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(self, a: u32) -> Option<u32> {
        match self.level {
            Level::Fq2 => self.ctx.fq2_inv(a),
            _ => self.ctx.fq_inv(a),
        }
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `n` in the field.
    pub fn from_int(self, n: i64) -> u32 {
        n.rem_euclid(self.ctx.p as i64) as u32
    }
}

/// Base-`p` digits of `n`, low → high, padded to `len`.
pub(crate) fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn additive_tables(p: u32, k: u32, q: u32) -> (Vec<u32>, Vec<u32>) {
    let k = k as usize;
    let coords: Vec<Vec<u32>> = (0..q).map(|n| digits(n, p, k)).collect();
    let mut add = vec![0u32; (q * q) as usize];
    for a in 0..q as usize {
        for b in 0..q as usize {
            let s: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q as usize + b] = from_digits(&s, p);
        }
    }
    let neg = coords.iter().map(|c| from_digits(&c.iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p)).collect();
    (add, neg)
}

/// Product of two `F_q` elements by schoolbook multiplication of coordinate
/// vectors followed by reduction modulo the (monic) defining polynomial.
fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let (a, b) = (digits(a, p, k), digits(b, p, k));
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
        prod[top] = 0;
    }
    let d: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
    from_digits(&d, p)
}

fn multiplicative_tables(p: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = q - 1;
    let pow = |g: u32, mut e: u32| {
        let (mut acc, mut base) = (1u32, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(acc, base, p, modulus);
            }
            base = slow_mul(base, base, p, modulus);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(n as u64);
    let g =
        (1..q).find(|&g| factors.iter().all(|&l| pow(g, n / l as u32) != 1)).expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1;
    for i in 0..n {
        exp[i as usize] = acc;
        exp[(i + n) as usize] = acc;
        log[acc as usize] = i;
        acc = slow_mul(acc, g, p, modulus);
    }
    (exp, log)
}

/// Irreducibility over `F_p` by trial division with every monic polynomial
/// of degree `1..=deg/2`.
pub(crate) fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = digits(n as u32, p, d);
            g.push(1);
            if fp_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn fp_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for top in (dg..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &gc) in g.iter().enumerate() {
            let idx = top - dg + i;
            r[idx] = (r[idx] + (p - c) * gc as u64) % p;
        }
    }
    r[..dg].iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> FieldCtx {
        FieldCtx::new(p, k, None, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(f(5, 1).modulus_q2(), [2, 0, 1]);
        assert_eq!(f(2, 2).modulus_q(), &[1, 1, 1]);
        // over F_4 = {0, 1, y, y+1}, t^2 + t + y has no root
        assert_eq!(f(2, 2).modulus_q2(), [2, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 1, None, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(2, 11, None, None), Err(Error::CapExceeded { .. })));
        assert!(matches!(FieldCtx::new(5, 1, None, Some([1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FieldCtx::new(2, 2, Some(vec![1, 0, 1]), None), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FieldCtx::new(5, 1, None, Some([2, 0, 3])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn small_arithmetic() {
        let f5 = f(5, 1);
        let two = f5.elt(Level::Fq, 2).unwrap();
        assert_eq!(f5.inv(two).unwrap().index(), 3);
        assert_eq!(f5.pow(two, -1).unwrap().index(), 3);
        assert_eq!(f5.inv(f5.zero(Level::Fq)), Err(Error::DivisionByZero));

        let f4 = f(2, 2);
        let y = f4.from_coords(Level::Fq, &[0, 1]).unwrap();
        assert_eq!(f4.coords(f4.mul(y, y).unwrap()), vec![1, 1]);
        let mismatch = f4.add(y, f4.one(Level::Fq2));
        assert!(matches!(mismatch, Err(Error::FieldLevelMismatch { .. })));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(f(5, 1).primitive_element(Level::Fq).index(), 2);
        assert_eq!(f(7, 1).primitive_element(Level::Fq).index(), 3);
        assert_eq!(f(2, 2).primitive_element(Level::Fq).index(), 2);
        for ctx in [f(5, 1), f(2, 3), f(3, 2)] {
            let g = ctx.primitive_element(Level::Fq2);
            assert_eq!(ctx.order(g).unwrap(), ctx.q2() as u64 - 1);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f5 = f(5, 1);
        let z = f5.nth_root_of_unity(4).unwrap();
        assert_eq!((z.level(), z.index()), (Level::Fq, 2));
        let z3 = f5.nth_root_of_unity(3).unwrap();
        assert_eq!(z3.level(), Level::Fq2);
        assert_eq!(f5.order(z3).unwrap(), 3);
        assert!(z3.index() >= 5);
        assert_eq!(f5.nth_root_of_unity(10).unwrap_err(), Error::OrderNotDivisible { n: 10, order: 24 });
    }

    #[test]
    fn trace_values() {
        // α^2 = 2, i.e. modulus t^2 + 3
        let ctx = FieldCtx::new(5, 1, None, Some([3, 0, 1])).unwrap();
        let alpha = ctx.elt(Level::Fq2, 5).unwrap();
        assert_eq!(ctx.trace_q2_to_q(alpha).unwrap().index(), 0);
        let three = ctx.elt(Level::Fq2, 3).unwrap();
        assert_eq!(ctx.trace_q2_to_q(three).unwrap().index(), 1);
        assert_eq!(ctx.trace_q2_to_q(ctx.zero(Level::Fq2)).unwrap().index(), 0);
        assert!(ctx.trace_q2_to_q(ctx.one(Level::Fq)).is_err());
    }

    #[test]
    fn frobenius_is_the_qth_power() {
        for ctx in [f(5, 1), f(2, 2), f(3, 2)] {
            let ar = ctx.arith(Level::Fq2);
            for x in 0..ctx.q2() {
                assert_eq!(ctx.fq2_frob(x), ar.pow(x, ctx.q() as u64));
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        let ctx = f(3, 2);
        let back = FieldCtx::from_spec(&ctx.spec()).unwrap();
        assert_eq!(ctx, back);
    }
}
