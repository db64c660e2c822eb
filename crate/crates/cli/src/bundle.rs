//! The serialised construction bundle and the verdicts recomputed from it.

use std::sync::Arc;

use cyclofactor_core::json::{elt_from_json, elt_to_json, CycleReport, EltJson, FactorJson, MatrixJson};
use cyclofactor_core::univariate::INTERPOLATION_LIMIT;
use cyclofactor_core::{
    build_sigma, decomposition_matches, to_univariate, Claims, ConstructionSpec, CoordPerm, CycleStructure, FieldCtx,
    FieldSpec, Level, PermMap, Variant, VariantKind,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A map together with the generator string it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEcho {
    pub generator: String,
    pub table: Vec<u32>,
}

/// Everything needed to rebuild a [`ConstructionSpec`]. The tables are
/// authoritative; generator strings are informational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEcho {
    pub field: FieldSpec,
    pub r: u64,
    pub variant: VariantKind,
    pub factor: FactorJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<EltJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<MapEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<MapEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<MapEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau2: Option<MapEcho>,
}

fn missing(what: &str) -> CliError {
    CliError::constraint(format!("spec is missing {what}"))
}

impl SpecEcho {
    pub fn new(spec: &ConstructionSpec, names: [&str; 2]) -> Self {
        let ctx = spec.ctx();
        let mut echo = SpecEcho {
            field: ctx.spec(),
            r: spec.r(),
            variant: spec.variant().kind(),
            factor: FactorJson::new(ctx, spec.factor()),
            m: None,
            a1: None,
            a2: None,
            matrix: None,
            tau1: None,
            tau2: None,
        };
        let echo_map = |name: &str, table: &[u32]| MapEcho { generator: name.to_string(), table: table.to_vec() };
        match spec.variant() {
            Variant::Type4(s) | Variant::Type5(s) => {
                echo.m = Some(elt_to_json(ctx, ctx.elt(Level::Fq, s.m).expect("m lies in F_q")));
                echo.a1 = Some(echo_map(names[0], s.a1.table()));
                echo.a2 = Some(echo_map(names[1], s.a2.table()));
            }
            Variant::General { tau1, tau2 } => {
                echo.matrix = Some(MatrixJson::new(ctx, spec.matrix()));
                echo.tau1 = Some(echo_map(names[0], tau1.table()));
                echo.tau2 = Some(echo_map(names[1], tau2.table()));
            }
        }
        echo
    }

    pub fn to_spec(&self) -> CliResult<ConstructionSpec> {
        let ctx = Arc::new(FieldCtx::from_spec(&self.field)?);
        if self.factor.r != self.r {
            return Err(CliError::constraint(format!("factor is for r = {}, spec says r = {}", self.factor.r, self.r)));
        }
        let factor = self.factor.to_factor(&ctx)?;
        match self.variant {
            VariantKind::Type4 | VariantKind::Type5 => {
                let m = elt_from_json(&ctx, Level::Fq, self.m.as_ref().ok_or_else(|| missing("m"))?)?.index();
                let a1 = CoordPerm::from_table(ctx.q(), self.a1.as_ref().ok_or_else(|| missing("a1"))?.table.clone())?;
                let a2 = CoordPerm::from_table(ctx.q(), self.a2.as_ref().ok_or_else(|| missing("a2"))?.table.clone())?;
                Ok(ConstructionSpec::structured(ctx, factor, self.variant, m, a1, a2)?)
            }
            VariantKind::General => {
                let matrix = self.matrix.as_ref().ok_or_else(|| missing("matrix"))?.to_matrix(&ctx)?;
                check_general_matrix(&ctx, &matrix, &factor)?;
                let tau1 =
                    PermMap::from_table(ctx.clone(), self.tau1.as_ref().ok_or_else(|| missing("tau1"))?.table.clone())?;
                let tau2 =
                    PermMap::from_table(ctx.clone(), self.tau2.as_ref().ok_or_else(|| missing("tau2"))?.table.clone())?;
                Ok(ConstructionSpec::general(ctx, factor, matrix, tau1, tau2)?)
            }
        }
    }
}

/// A user-supplied matrix must have the chosen factor as its characteristic
/// polynomial; anything else is a parameter error rather than a failure.
pub fn check_general_matrix(
    ctx: &FieldCtx,
    matrix: &cyclofactor_core::Mat2,
    factor: &cyclofactor_core::QuadFactor,
) -> CliResult<()> {
    if matrix.char_poly(ctx) != factor.poly() {
        return Err(CliError::constraint(format!(
            "matrix has characteristic polynomial {}, expected {}",
            matrix.char_poly(ctx),
            factor.poly()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Skip,
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Skip => "skip",
        }
    }
}

/// Measured properties of a table, next to what the construction claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub pp: bool,
    pub cpp: bool,
    pub r_regular: bool,
    /// The table equals `build_sigma` of the echoed spec.
    pub matches_spec: bool,
    pub decomposition: Check,
    pub univariate_roundtrip: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub spec: SpecEcho,
    pub matrix: MatrixJson,
    pub sigma: Vec<u32>,
    pub claims: Claims,
    pub verdicts: Verdicts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<CycleReport>,
}

/// Result of running every predicate over one table.
pub struct Evaluation {
    pub claims: Claims,
    pub verdicts: Verdicts,
    pub cycles: Option<CycleStructure>,
}

impl Evaluation {
    /// Claimed properties the table does not have, plus failed cross-checks.
    pub fn contradictions(&self) -> Vec<String> {
        let (c, v) = (&self.claims, &self.verdicts);
        let mut out = Vec::new();
        for (name, claimed, holds) in
            [("pp", c.pp, v.pp), ("cpp", c.cpp, v.cpp), ("r_regular", c.r_regular, v.r_regular)]
        {
            if claimed && !holds {
                out.push(format!("claimed {name} but the table is not"));
            }
        }
        if !v.matches_spec {
            out.push("table differs from the construction".into());
        }
        if v.decomposition == Check::Fail {
            out.push("decomposition of σ + e does not hold".into());
        }
        if v.univariate_roundtrip == Check::Fail {
            out.push("univariate form does not reproduce the table".into());
        }
        out
    }
}

/// Runs every predicate on `table` as a candidate for `σ` of `spec`.
pub fn evaluate(spec: &ConstructionSpec, table: &[u32], with_cycles: bool) -> CliResult<Evaluation> {
    let ctx = spec.ctx();
    let sigma = PermMap::from_table(ctx.clone(), table.to_vec())
        .map_err(|e| CliError::Failure(format!("σ table is malformed: {e}")))?;
    let expected = build_sigma(spec)?;
    let pp = sigma.is_permutation();
    let cycles = if !pp {
        None
    } else if with_cycles {
        Some(sigma.cycle_structure_with_cycles()?)
    } else {
        Some(sigma.cycle_structure()?)
    };
    let r_regular = cycles.as_ref().is_some_and(|cs| cs.is_regular(spec.r() as usize));
    let decomposition = match spec.variant() {
        Variant::General { .. } => Check::Skip,
        _ => Check::from_bool(decomposition_matches(spec, &sigma)?),
    };
    let univariate_roundtrip = if ctx.q2() as u64 > INTERPOLATION_LIMIT {
        Check::Skip
    } else {
        match to_univariate(&sigma) {
            Ok(_) => Check::Pass,
            Err(cyclofactor_core::Error::SpecInvariantViolated(_)) => Check::Fail,
            Err(e) => return Err(e.into()),
        }
    };
    let verdicts = Verdicts {
        pp,
        cpp: pp && sigma.is_cpp(),
        r_regular,
        matches_spec: expected == sigma,
        decomposition,
        univariate_roundtrip,
    };
    Ok(Evaluation { claims: spec.claims(), verdicts, cycles })
}

/// Either a full bundle or a bare spec echo.
pub enum SpecFile {
    Bundle(Box<Bundle>),
    Spec(Box<SpecEcho>),
}

impl SpecFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("spec").is_some() {
            Ok(SpecFile::Bundle(Box::new(serde_json::from_value(value)?)))
        } else {
            Ok(SpecFile::Spec(Box::new(serde_json::from_value(value)?)))
        }
    }

    /// The spec and the table to analyse: the bundle's own table if present,
    /// otherwise a freshly built `σ`.
    pub fn resolve(&self) -> CliResult<(ConstructionSpec, Vec<u32>)> {
        match self {
            SpecFile::Bundle(b) => Ok((b.spec.to_spec()?, b.sigma.clone())),
            SpecFile::Spec(echo) => {
                let spec = echo.to_spec()?;
                let sigma = build_sigma(&spec)?;
                Ok((spec, sigma.into_table()))
            }
        }
    }
}
