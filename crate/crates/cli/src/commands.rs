//! The single-spec subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use cyclofactor_core::json::{CycleReport, FactorJson, MatrixJson, UnivariateJson};
use cyclofactor_core::numtheory::{gcd, multiplicative_order};
use cyclofactor_core::poly::{check_order_constraint, expected_quadratic_count};
use cyclofactor_core::{
    all_quadratic_factors, build_sigma, matrix_type4, quadratic_factor, to_univariate, Claims, ConstructionSpec,
    CycleStructure, FieldCtx, FieldSpec, PermMap, Provenance, QuadFactor, Selector, VariantKind,
};
use serde::Serialize;

use crate::bundle::{check_general_matrix, evaluate, Bundle, SpecEcho, SpecFile, Verdicts};
use crate::error::{CliError, CliResult};
use crate::gen;
use crate::report::{coords_text, Report};

/// Field flags as parsed from the command line.
pub struct FieldOpts {
    pub p: u32,
    pub k: u32,
    pub modulus_q: Option<Vec<u32>>,
    pub modulus_q2: Option<Vec<u32>>,
}

impl FieldOpts {
    pub fn build(&self) -> CliResult<Arc<FieldCtx>> {
        let q2 =
            match &self.modulus_q2 {
                None => None,
                Some(v) => Some(<[u32; 3]>::try_from(v.as_slice()).map_err(|_| {
                    CliError::constraint("modulus-q2 takes three comma-separated coefficients c0,c1,c2")
                })?),
            };
        Ok(Arc::new(FieldCtx::new(self.p, self.k, self.modulus_q.clone(), q2)?))
    }
}

/// Every hypothesis `r` violates for this field, not just the first.
pub fn order_constraints(r: u64, ctx: &FieldCtx) -> CliResult<()> {
    let q = ctx.q() as u64;
    let p = ctx.p() as u64;
    let mut broken = Vec::new();
    if gcd(r, p) != 1 {
        broken.push(format!("gcd({r}, {p}) != 1"));
    }
    if r < 3 {
        broken.push(format!("r = {r} must be at least 3"));
    }
    if r == 0 || !(q * q - 1).is_multiple_of(r) {
        broken.push(format!("r must divide q^2 - 1, but {r} ∤ {}", q * q - 1));
    }
    if broken.is_empty() {
        // the library check must agree
        check_order_constraint(r, ctx)?;
        Ok(())
    } else {
        Err(CliError::constraint(broken.join("; ")))
    }
}

fn selector(s: Option<u64>, t: Option<u64>) -> Option<Selector> {
    match (s, t) {
        (None, None) => None,
        (Some(s), Some(t)) => Some(Selector::Pair(s, t)),
        (Some(s), None) => Some(Selector::Single(s)),
        (None, Some(t)) => Some(Selector::Single(t)),
    }
}

fn provenance_cells(p: Provenance) -> [String; 3] {
    match p {
        Provenance::Split { s, t } => ["split".into(), s.to_string(), t.to_string()],
        Provenance::Conjugate { s } => ["conjugate".into(), s.to_string(), String::new()],
    }
}

#[derive(Serialize)]
struct FactorOutput {
    field: FieldSpec,
    r: u64,
    branch: &'static str,
    /// Degree of every irreducible factor of `Q_r` over `F_q`.
    irreducible_degree: u64,
    expected_count: u64,
    factors: Vec<FactorJson>,
}

pub fn factor(field: &FieldOpts, r: u64, all: bool, s: Option<u64>, t: Option<u64>) -> CliResult<Report> {
    let ctx = field.build()?;
    order_constraints(r, &ctx)?;
    let q = ctx.q() as u64;
    let factors: Vec<QuadFactor> = if all {
        if s.is_some() || t.is_some() {
            return Err(CliError::constraint("--all cannot be combined with --s/--t"));
        }
        all_quadratic_factors(r, &ctx)?
    } else {
        vec![quadratic_factor(r, &ctx, selector(s, t))?]
    };
    let out = FactorOutput {
        field: ctx.spec(),
        r,
        branch: if (q - 1).is_multiple_of(r) { "split" } else { "conjugate" },
        irreducible_degree: multiplicative_order(q, r).expect("gcd(q, r) = 1"),
        expected_count: expected_quadratic_count(r, q),
        factors: factors.iter().map(|h| FactorJson::new(&ctx, h)).collect(),
    };
    let rows = out
        .factors
        .iter()
        .map(|f| {
            let [branch, s, t] = provenance_cells(f.provenance);
            vec![r.to_string(), coords_text(&f.h0), coords_text(&f.h1), branch, s, t, f.poly.clone()]
        })
        .collect();
    Report::new(&out, vec!["r", "h0", "h1", "branch", "s", "t", "poly"], rows)
}

/// How `construct` picks `h`.
pub struct FactorChoice {
    pub h_index: Option<usize>,
    pub s: Option<u64>,
    pub t: Option<u64>,
}

impl FactorChoice {
    fn resolve(&self, r: u64, ctx: &FieldCtx) -> CliResult<QuadFactor> {
        match self.h_index {
            Some(i) => {
                if self.s.is_some() || self.t.is_some() {
                    return Err(CliError::constraint("--h-index cannot be combined with --s/--t"));
                }
                let all = all_quadratic_factors(r, ctx)?;
                let n = all.len();
                all.into_iter()
                    .nth(i)
                    .ok_or_else(|| CliError::constraint(format!("--h-index {i} out of range: {n} factors")))
            }
            None => Ok(quadratic_factor(r, ctx, selector(self.s, self.t))?),
        }
    }
}

pub struct ConstructOpts {
    pub r: u64,
    pub variant: VariantKind,
    pub m: String,
    pub factor: FactorChoice,
    pub a1: String,
    pub a2: String,
    pub tau1: String,
    pub tau2: String,
    pub matrix: Option<String>,
    pub list_cycles: bool,
}

/// Builds the spec described by the flags, with the generator names to echo.
pub fn spec_from_flags(field: &FieldOpts, o: &ConstructOpts) -> CliResult<(ConstructionSpec, [String; 2])> {
    let ctx = field.build()?;
    order_constraints(o.r, &ctx)?;
    let h = o.factor.resolve(o.r, &ctx)?;
    let m = gen::scalar(&ctx, &o.m)?;
    match o.variant {
        VariantKind::Type4 | VariantKind::Type5 => {
            let (a1, n1) = gen::coord_perm(&ctx, &o.a1, None)?;
            let (a2, n2) = gen::coord_perm(&ctx, &o.a2, Some(&a1))?;
            Ok((ConstructionSpec::structured(ctx, h, o.variant, m, a1, a2)?, [n1, n2]))
        }
        VariantKind::General => {
            let matrix = match &o.matrix {
                Some(text) => gen::matrix(&ctx, text)?,
                None => matrix_type4(&h, m, &ctx)?,
            };
            check_general_matrix(&ctx, &matrix, &h)?;
            let tau1 = gen::full_perm(&ctx, &o.tau1, None)?;
            let tau2 = gen::full_perm(&ctx, &o.tau2, Some(&tau1))?;
            Ok((ConstructionSpec::general(ctx, h, matrix, tau1, tau2)?, [o.tau1.clone(), o.tau2.clone()]))
        }
    }
}

fn cycle_summary(cs: Option<&CycleStructure>) -> [String; 2] {
    match cs {
        None => [String::new(), String::new()],
        Some(cs) => {
            let lengths: Vec<String> = cs.lengths.iter().map(|(l, n)| format!("{l}^{n}")).collect();
            [cs.fixed_points.to_string(), lengths.join(" ")]
        }
    }
}

const VERDICT_HEADER: [&str; 9] = [
    "claim_pp",
    "claim_cpp",
    "claim_r_regular",
    "pp",
    "cpp",
    "r_regular",
    "matches_spec",
    "decomposition",
    "univariate",
];

fn verdict_cells(c: &Claims, v: &Verdicts) -> Vec<String> {
    let b = |x: bool| x.to_string();
    vec![
        b(c.pp),
        b(c.cpp),
        b(c.r_regular),
        b(v.pp),
        b(v.cpp),
        b(v.r_regular),
        b(v.matches_spec),
        v.decomposition.as_str().into(),
        v.univariate_roundtrip.as_str().into(),
    ]
}

fn summary_header() -> Vec<&'static str> {
    let mut h = vec!["q", "r", "variant", "h0", "h1"];
    h.extend(VERDICT_HEADER);
    h.extend(["fixed", "cycles"]);
    h
}

fn summary_row(echo: &SpecEcho, claims: &Claims, verdicts: &Verdicts, cycles: Option<&CycleStructure>) -> Vec<String> {
    let q = echo.field.p.pow(echo.field.k);
    let mut row = vec![
        q.to_string(),
        echo.r.to_string(),
        echo.variant.to_string(),
        coords_text(&echo.factor.h0),
        coords_text(&echo.factor.h1),
    ];
    row.extend(verdict_cells(claims, verdicts));
    row.extend(cycle_summary(cycles));
    row
}

pub fn construct(field: &FieldOpts, o: &ConstructOpts) -> CliResult<Report> {
    let (spec, names) = spec_from_flags(field, o)?;
    let sigma = build_sigma(&spec)?;
    let eval = evaluate(&spec, sigma.table(), o.list_cycles)?;
    let echo = SpecEcho::new(&spec, [&names[0], &names[1]]);
    let bundle = Bundle {
        matrix: MatrixJson::new(spec.ctx(), spec.matrix()),
        sigma: sigma.into_table(),
        claims: eval.claims,
        verdicts: eval.verdicts,
        cycles: eval.cycles.as_ref().map(CycleReport::from),
        spec: echo,
    };
    let row = summary_row(&bundle.spec, &eval.claims, &eval.verdicts, eval.cycles.as_ref());
    let mut report = Report::new(&bundle, summary_header(), vec![row])?;
    report.contradictions = eval.contradictions();
    Ok(report)
}

#[derive(Serialize)]
struct VerifyOutput {
    claims: Claims,
    verdicts: Verdicts,
    /// Whether the verdicts stored in the bundle agree with the recomputed ones.
    stored_verdicts_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycles: Option<CycleReport>,
    contradictions: Vec<String>,
}

pub fn verify(path: &Path) -> CliResult<Report> {
    let bundle: Bundle = serde_json::from_str(&fs::read_to_string(path)?)?;
    let spec = bundle.spec.to_spec()?;
    let eval = evaluate(&spec, &bundle.sigma, false)?;
    let mut contradictions = eval.contradictions();
    let stored_verdicts_agree = bundle.verdicts == eval.verdicts && bundle.claims == eval.claims;
    if !stored_verdicts_agree {
        contradictions.push("verdicts stored in the bundle differ from the recomputed ones".into());
    }
    let out = VerifyOutput {
        claims: eval.claims,
        verdicts: eval.verdicts,
        stored_verdicts_agree,
        cycles: eval.cycles.as_ref().map(CycleReport::from),
        contradictions: contradictions.clone(),
    };
    let row = summary_row(&bundle.spec, &eval.claims, &eval.verdicts, eval.cycles.as_ref());
    let mut report = Report::new(&out, summary_header(), vec![row])?;
    report.contradictions = contradictions;
    Ok(report)
}

pub fn cycles(path: &Path, list: bool) -> CliResult<Report> {
    let (spec, table) = SpecFile::parse(&fs::read_to_string(path)?)?.resolve()?;
    let f = PermMap::from_table(spec.ctx().clone(), table)?;
    let cs = if list { f.cycle_structure_with_cycles()? } else { f.cycle_structure()? };
    let mut rows = vec![vec!["1".to_string(), cs.fixed_points.to_string()]];
    rows.extend(cs.lengths.iter().map(|(l, n)| vec![l.to_string(), n.to_string()]));
    Report::new(&CycleReport::from(&cs), vec!["length", "count"], rows)
}

pub fn univariate(path: &Path) -> CliResult<Report> {
    let (spec, table) = SpecFile::parse(&fs::read_to_string(path)?)?.resolve()?;
    let ctx = spec.ctx();
    let f = to_univariate(&PermMap::from_table(ctx.clone(), table)?)?;
    let out = UnivariateJson::new(ctx, &f);
    let rows = out.monomials.iter().map(|m| vec![m.exp.to_string(), coords_text(&m.coeff)]).collect();
    Report::new(&out, vec!["exp", "coeff"], rows)
}

/// Row counts keyed by outcome, shared with `search`.
pub fn tally<'a>(outcomes: impl Iterator<Item = &'a bool>) -> BTreeMap<&'static str, usize> {
    let mut t = BTreeMap::from([("passed", 0), ("failed", 0)]);
    for &ok in outcomes {
        *t.get_mut(if ok { "passed" } else { "failed" }).unwrap() += 1;
    }
    t
}
