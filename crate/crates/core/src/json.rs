//! JSON shapes for field elements, polynomials, matrices, factors, cycle
//! reports and univariate forms. Elements are encoded as their `F_p`
//! coordinate vectors, low → high.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Elt, FieldCtx, Level};
use crate::linmap::Mat2;
use crate::permcycle::CycleStructure;
use crate::poly::{Poly, Provenance, QuadFactor};

pub type EltJson = Vec<u32>;

pub fn elt_to_json(ctx: &FieldCtx, x: Elt) -> EltJson {
    ctx.coords(x)
}

pub fn elt_from_json(ctx: &FieldCtx, level: Level, coords: &[u32]) -> Result<Elt> {
    ctx.from_coords(level, coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub level: Level,
    pub coeffs: Vec<EltJson>,
}

impl PolyJson {
    pub fn new(ctx: &FieldCtx, f: &Poly) -> Self {
        let coeffs = f.coeffs().iter().map(|&c| ctx.coords(ctx.elt_unchecked(f.level(), c))).collect();
        PolyJson { level: f.level(), coeffs }
    }

    pub fn to_poly(&self, ctx: &FieldCtx) -> Result<Poly> {
        let elts = self.coeffs.iter().map(|c| ctx.from_coords(self.level, c)).collect::<Result<Vec<_>>>()?;
        Poly::from_elts(self.level, &elts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub entries: [[EltJson; 2]; 2],
}

impl MatrixJson {
    pub fn new(ctx: &FieldCtx, m: &Mat2) -> Self {
        let e = |r, c| ctx.coords(m.entry(ctx, r, c));
        MatrixJson { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn to_matrix(&self, ctx: &FieldCtx) -> Result<Mat2> {
        let e = |r: usize, c: usize| ctx.from_coords(Level::Fq, &self.entries[r][c]);
        Mat2::new(ctx, [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub r: u64,
    pub h0: EltJson,
    pub h1: EltJson,
    pub provenance: Provenance,
    pub poly: String,
}

impl FactorJson {
    pub fn new(ctx: &FieldCtx, h: &QuadFactor) -> Self {
        FactorJson {
            r: h.r(),
            h0: ctx.coords(ctx.elt_unchecked(Level::Fq, h.h0())),
            h1: ctx.coords(ctx.elt_unchecked(Level::Fq, h.h1())),
            provenance: h.provenance(),
            poly: h.poly().to_string(),
        }
    }

    pub fn to_factor(&self, ctx: &FieldCtx) -> Result<QuadFactor> {
        let h0 = ctx.from_coords(Level::Fq, &self.h0)?.index();
        let h1 = ctx.from_coords(Level::Fq, &self.h1)?.index();
        QuadFactor::reconstruct(ctx, self.r, h0, h1, self.provenance)
    }
}

/// `{"fixed": n, "cycles": {"3": 8}}`, plus the explicit cycles on request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub fixed: usize,
    pub cycles: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_list: Option<Vec<Vec<u32>>>,
}

impl From<&CycleStructure> for CycleReport {
    fn from(cs: &CycleStructure) -> Self {
        CycleReport { fixed: cs.fixed_points, cycles: cs.lengths.clone(), cycle_list: cs.cycles.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub exp: usize,
    pub coeff: EltJson,
}

/// Sparse form `{"monomials": [{"exp": e, "coeff": [...]}]}`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivariateJson {
    pub monomials: Vec<Monomial>,
}

impl UnivariateJson {
    pub fn new(ctx: &FieldCtx, f: &Poly) -> Self {
        let monomials = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(exp, &c)| Monomial { exp, coeff: ctx.coords(ctx.elt_unchecked(f.level(), c)) })
            .collect();
        UnivariateJson { monomials }
    }
}
