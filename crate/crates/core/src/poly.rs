//! Dense univariate polynomials, cyclotomic polynomials and their quadratic
//! factors over `F_q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx, Level};
use crate::numtheory::{divisors, euler_phi, gcd};

/// Polynomial over one field level. Coefficients are canonical indices,
/// low → high, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    level: Level,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(level: Level) -> Self {
        Poly { level, coeffs: Vec::new() }
    }

    pub fn one(level: Level) -> Self {
        Poly { level, coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x(level: Level) -> Self {
        Poly { level, coeffs: vec![0, 1] }
    }

    /// `c·x^e` with `c` given by index.
    pub fn monomial(level: Level, c: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::from_raw(level, coeffs)
    }

    /// Checked constructor from coefficient indices.
    pub fn new(ctx: &FieldCtx, level: Level, coeffs: Vec<u32>) -> Result<Self> {
        let size = ctx.size(level);
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= size) {
            return Err(Error::InvalidElement { level, index: bad as u64 });
        }
        Ok(Self::from_raw(level, coeffs))
    }

    pub fn from_elts(level: Level, coeffs: &[Elt]) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.level() != level) {
            return Err(Error::FieldLevelMismatch { expected: level, found: bad.level() });
        }
        Ok(Self::from_raw(level, coeffs.iter().map(|c| c.index()).collect()))
    }

    pub(crate) fn from_raw(level: Level, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { level, coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(ctx: &FieldCtx, level: Level, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = ctx.arith(level).neg(1);
        coeffs[n] = 1;
        Self::from_raw(level, coeffs)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.level != other.level {
            return Err(Error::FieldLevelMismatch { expected: self.level, found: other.level });
        }
        Ok(())
    }

    /// Reinterprets the coefficients at a higher level.
    pub fn lift(&self, level: Level) -> Result<Poly> {
        if level < self.level {
            return Err(Error::FieldLevelMismatch { expected: self.level, found: level });
        }
        Ok(Poly { level, coeffs: self.coeffs.clone() })
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        self.check(other)?;
        let ar = ctx.arith(self.level);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ar.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(self.level, coeffs))
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        self.check(other)?;
        let ar = ctx.arith(self.level);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ar.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(self.level, coeffs))
    }

    pub fn scale(&self, c: u32, ctx: &FieldCtx) -> Poly {
        let ar = ctx.arith(self.level);
        Self::from_raw(self.level, self.coeffs.iter().map(|&a| ar.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.level));
        }
        let ar = ctx.arith(self.level);
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ar.add(out[i + j], ar.mul(a, b));
            }
        }
        Ok(Self::from_raw(self.level, out))
    }

    /// Euclidean division: `self = quot·divisor + rem` with
    /// `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let ar = ctx.arith(self.level);
        let lead_inv = ar.inv(divisor.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.level), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = ar.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = ar.sub(rem[idx], ar.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(self.level, quot), Self::from_raw(self.level, rem)))
    }

    pub fn rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        Ok(self.divmod(divisor, ctx)?.1)
    }

    /// Exact quotient; fails with `SpecInvariantViolated` on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        let (q, r) = self.divmod(divisor, ctx)?;
        if !r.is_zero() {
            return Err(Error::SpecInvariantViolated("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly, ctx: &FieldCtx) -> Result<bool> {
        Ok(other.rem(self, ctx)?.is_zero())
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = ctx.arith(self.level).inv(lead).expect("nonzero lead");
                self.scale(inv, ctx)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, ctx)?;
            a = b;
            b = r;
        }
        Ok(a.monic(ctx))
    }

    /// Horner evaluation at a point of the same level.
    pub fn eval(&self, at: Elt, ctx: &FieldCtx) -> Result<Elt> {
        if at.level() != self.level {
            return Err(Error::FieldLevelMismatch { expected: self.level, found: at.level() });
        }
        Ok(ctx.elt_unchecked(self.level, self.eval_raw(at.index(), ctx)))
    }

    pub(crate) fn eval_raw(&self, at: u32, ctx: &FieldCtx) -> u32 {
        let ar = ctx.arith(self.level);
        self.coeffs.iter().rev().fold(0, |acc, &c| ar.add(ar.mul(acc, at), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        let mut base = self.rem(modulus, ctx)?;
        let mut acc = Poly::one(self.level).rem(modulus, ctx)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx)?.rem(modulus, ctx)?;
            }
            base = base.mul(&base, ctx)?.rem(modulus, ctx)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `h(t - 1)` for a polynomial `h(t)`.
    pub fn shift_by_minus_one(&self, ctx: &FieldCtx) -> Result<Poly> {
        let ar = ctx.arith(self.level);
        let t_minus_one = Poly::from_raw(self.level, vec![ar.neg(1), 1]);
        let mut acc = Poly::zero(self.level);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&t_minus_one, ctx)?.add(&Poly::from_raw(self.level, vec![c]), ctx)?;
        }
        Ok(acc)
    }

    /// Distinct-degree factorisation counts of a squarefree polynomial:
    /// pairs `(d, n)` meaning `n` irreducible factors of degree `d`.
    pub fn distinct_degree_counts(&self, ctx: &FieldCtx) -> Result<Vec<(usize, usize)>> {
        let q = ctx.size(self.level) as u64;
        let x = Poly::x(self.level);
        let mut rest = self.monic(ctx);
        let mut xq = x.clone();
        let mut out = Vec::new();
        let mut d = 0;
        while rest.degree().unwrap_or(0) > 0 {
            d += 1;
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.degree().unwrap(), 1));
                break;
            }
            xq = xq.pow_mod(q, &rest, ctx)?;
            let g = rest.gcd(&xq.sub(&x, ctx)?, ctx)?;
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.push((d, gd / d));
                rest = rest.exact_div(&g, ctx)?;
                xq = xq.rem(&rest, ctx)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "[{c}]")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "[{c}]x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "[{c}]x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Cyclotomic polynomial `Q_r` over the prime field, obtained by dividing
/// `x^r - 1` by `Q_l` for every proper divisor `l` of `r`.
pub fn cyclotomic(r: u64, ctx: &FieldCtx) -> Result<Poly> {
    if r == 0 || gcd(r, ctx.p() as u64) != 1 {
        return Err(Error::CharacteristicDividesR { r, p: ctx.p() as u64 });
    }
    let mut memo = HashMap::new();
    cyclotomic_memo(r, ctx, &mut memo)
}

fn cyclotomic_memo(r: u64, ctx: &FieldCtx, memo: &mut HashMap<u64, Poly>) -> Result<Poly> {
    if let Some(p) = memo.get(&r) {
        return Ok(p.clone());
    }
    let mut acc = Poly::x_pow_minus_one(ctx, Level::Fp, r as usize);
    for l in divisors(r).into_iter().filter(|&l| l < r) {
        let ql = cyclotomic_memo(l, ctx, memo)?;
        acc = acc.exact_div(&ql, ctx)?;
    }
    debug_assert_eq!(acc.degree(), Some(euler_phi(r) as usize));
    memo.insert(r, acc.clone());
    Ok(acc)
}

/// How a quadratic factor was produced from a primitive `r`-th root of
/// unity `ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Provenance {
    /// `q ≡ 1 (mod r)`: `(x - ζ^s)(x - ζ^t)` with `ζ ∈ F_q`.
    Split { s: u64, t: u64 },
    /// `q ≢ 1, q^2 ≡ 1 (mod r)`: `(x - ζ^s)(x - ζ^{sq})` with `ζ ∈ F_{q^2}`.
    Conjugate { s: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Pair(u64, u64),
    Single(u64),
}

impl From<Provenance> for Selector {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::Split { s, t } => Selector::Pair(s, t),
            Provenance::Conjugate { s } => Selector::Single(s),
        }
    }
}

/// A monic quadratic `t^2 + h1·t + h0` over `F_q` dividing `Q_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadFactor {
    h0: u32,
    h1: u32,
    r: u64,
    provenance: Provenance,
}

impl QuadFactor {
    pub fn h0(&self) -> u32 {
        self.h0
    }

    pub fn h1(&self) -> u32 {
        self.h1
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn poly(&self) -> Poly {
        Poly::from_raw(Level::Fq, vec![self.h0, self.h1, 1])
    }

    /// Rebuilds a factor from its provenance and checks that the stored
    /// coefficients agree.
    pub fn reconstruct(ctx: &FieldCtx, r: u64, h0: u32, h1: u32, provenance: Provenance) -> Result<Self> {
        let f = quadratic_factor(r, ctx, Some(provenance.into()))?;
        if (f.h0, f.h1) != (h0, h1) {
            return Err(Error::SpecInvariantViolated(format!(
                "factor (h0, h1) = ({h0}, {h1}) does not match its provenance, expected ({}, {})",
                f.h0, f.h1
            )));
        }
        Ok(f)
    }
}

/// Checks `gcd(r, p) = 1`, `r ≥ 3` and `r | q^2 - 1`.
pub fn check_order_constraint(r: u64, ctx: &FieldCtx) -> Result<()> {
    let p = ctx.p() as u64;
    if gcd(r, p) != 1 {
        return Err(Error::CharacteristicDividesR { r, p });
    }
    if r < 3 {
        return Err(Error::RTooSmall { r });
    }
    let q = ctx.q() as u64;
    if !(q * q - 1).is_multiple_of(r) {
        return Err(Error::BadOrderConstraint { r, order: q * q - 1 });
    }
    Ok(())
}

fn coprime_exponent(e: u64, r: u64) -> Result<u64> {
    let e = e % r;
    if gcd(e, r) != 1 {
        return Err(Error::SelectorNotCoprime(e));
    }
    Ok(e)
}

/// A quadratic factor of `Q_r` built from a primitive `r`-th root of unity.
/// Defaults: `(s, t) = (1, r - 1)` when `q ≡ 1 (mod r)`, `s = 1` otherwise.
pub fn quadratic_factor(r: u64, ctx: &FieldCtx, selector: Option<Selector>) -> Result<QuadFactor> {
    check_order_constraint(r, ctx)?;
    let q = ctx.q() as u64;
    let zeta = ctx.nth_root_of_unity(r)?;
    let lvl = zeta.level();
    let ar = ctx.arith(lvl);
    let (roots, provenance) = if (q - 1).is_multiple_of(r) {
        let (s, t) = match selector.unwrap_or(Selector::Pair(1, r - 1)) {
            Selector::Pair(s, t) => (coprime_exponent(s, r)?, coprime_exponent(t, r)?),
            Selector::Single(_) => return Err(Error::SelectorMismatch("q = 1 mod r takes a pair (s, t)")),
        };
        if s == t {
            return Err(Error::DegenerateSelector);
        }
        let (s, t) = (s.min(t), s.max(t));
        ([ar.pow(zeta.index(), s), ar.pow(zeta.index(), t)], Provenance::Split { s, t })
    } else {
        let s = match selector.unwrap_or(Selector::Single(1)) {
            Selector::Single(s) => coprime_exponent(s, r)?,
            Selector::Pair(..) => return Err(Error::SelectorMismatch("q != 1 mod r takes a single s")),
        };
        let z = ar.pow(zeta.index(), s);
        ([z, ar.pow(z, q)], Provenance::Conjugate { s })
    };
    let h1 = ar.neg(ar.add(roots[0], roots[1]));
    let h0 = ar.mul(roots[0], roots[1]);
    if h1 >= ctx.q() || h0 >= ctx.q() {
        return Err(Error::SpecInvariantViolated("quadratic factor has coefficients outside F_q".into()));
    }
    let factor = QuadFactor { h0, h1, r, provenance };
    validate_factor(&factor, ctx)?;
    Ok(factor)
}

fn validate_factor(f: &QuadFactor, ctx: &FieldCtx) -> Result<()> {
    let h = f.poly();
    let qr = cyclotomic(f.r, ctx)?.lift(Level::Fq)?;
    if !h.divides(&qr, ctx)? {
        return Err(Error::SpecInvariantViolated(format!("{h} does not divide Q_{}", f.r)));
    }
    let ar = ctx.arith(Level::Fq);
    let at_one = h.eval_raw(1, ctx);
    let at_minus_one = h.eval_raw(ar.neg(1), ctx);
    if f.h0 == 0 || at_one == 0 || at_minus_one == 0 {
        return Err(Error::SpecInvariantViolated(format!("{h} vanishes at 0 or ±1")));
    }
    Ok(())
}

/// Number of monic quadratic divisors of `Q_r` over `F_q` predicted by the
/// splitting pattern.
pub fn expected_quadratic_count(r: u64, q: u64) -> u64 {
    let phi = euler_phi(r);
    if (q - 1).is_multiple_of(r) {
        phi * (phi - 1) / 2
    } else if (q * q - 1).is_multiple_of(r) {
        phi / 2
    } else {
        0
    }
}

/// Every monic quadratic factor of `Q_r` over `F_q`, generated from all
/// admissible selectors, deduplicated and sorted by `(h1, h0)`.
pub fn all_quadratic_factors(r: u64, ctx: &FieldCtx) -> Result<Vec<QuadFactor>> {
    check_order_constraint(r, ctx)?;
    let q = ctx.q() as u64;
    let units: Vec<u64> = (1..r).filter(|&s| gcd(s, r) == 1).collect();
    let selectors: Vec<Selector> = if (q - 1).is_multiple_of(r) {
        units.iter().enumerate().flat_map(|(i, &s)| units[i + 1..].iter().map(move |&t| Selector::Pair(s, t))).collect()
    } else {
        units.iter().map(|&s| Selector::Single(s)).collect()
    };
    let mut found = BTreeMap::new();
    for sel in selectors {
        let f = quadratic_factor(r, ctx, Some(sel))?;
        found.entry((f.h1, f.h0)).or_insert(f);
    }
    let expected = expected_quadratic_count(r, q);
    if found.len() as u64 != expected {
        return Err(Error::SpecInvariantViolated(format!(
            "found {} quadratic factors of Q_{r}, expected {expected}",
            found.len()
        )));
    }
    Ok(found.into_values().collect())
}

/// Exhaustive irreducibility test: no monic divisor of degree
/// `1..=deg/2`. Only meant for small degrees.
pub fn is_irreducible(f: &Poly, ctx: &FieldCtx) -> Result<bool> {
    let deg = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(d) => d,
    };
    let size = ctx.size(f.level) as u64;
    for d in 1..=deg / 2 {
        for n in 0..size.pow(d as u32) {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut m = n;
            for _ in 0..d {
                coeffs.push((m % size) as u32);
                m /= size;
            }
            coeffs.push(1);
            let g = Poly { level: f.level, coeffs };
            if f.rem(&g, ctx)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
