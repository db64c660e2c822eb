//! Grid search: every admissible `(field, r, h, variant, m, a₁, a₂)` row,
//! evaluated in parallel and emitted in grid order.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use cyclofactor_core::json::{elt_to_json, EltJson};
use cyclofactor_core::numtheory::{divisors, gcd};
use cyclofactor_core::{
    all_quadratic_factors, build_sigma, Claims, ConstructionSpec, CoordPerm, FieldCtx, Level, QuadFactor, VariantKind,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundle::{evaluate, Verdicts};
use crate::commands::{order_constraints, tally};
use crate::error::{CliError, CliResult};
use crate::gen;
use crate::report::{coords_text, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldEntry {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

/// Grid file contents. Every key is optional; omitted keys take the
/// defaults of the built-in grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub fields: Vec<FieldEntry>,
    /// Explicit `r` values; `None` means every admissible `r` of each field.
    pub r: Option<Vec<u64>>,
    pub variants: Vec<VariantKind>,
    /// Scalars as canonical indices or `"generator"`.
    pub m: Vec<String>,
    /// Generators for `a₁`; each row uses `a₂ = a₁⁻¹`.
    pub a: Vec<String>,
    /// Extra rows per cell with independent `a₁ = random:(base + 2i)`,
    /// `a₂ = random:(base + 2i + 1)`.
    pub independent_pairs: u64,
    pub independent_seed_base: u64,
    /// Interpolate `σ` back to a univariate polynomial on every row.
    pub univariate: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            fields: [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)]
                .map(|(p, k)| FieldEntry { p, k })
                .to_vec(),
            r: None,
            variants: vec![VariantKind::Type4, VariantKind::Type5],
            m: vec!["1".into(), "generator".into()],
            a: vec!["identity".into(), "monomial".into(), "random:42".into()],
            independent_pairs: 0,
            independent_seed_base: 1000,
            univariate: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub p: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub reason: String,
}

struct Job {
    ctx: Arc<FieldCtx>,
    r: u64,
    factor: QuadFactor,
    variant: VariantKind,
    m: u32,
    a1: (CoordPerm, String),
    a2: (CoordPerm, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub index: usize,
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub r: u64,
    pub h0: EltJson,
    pub h1: EltJson,
    pub factor: String,
    pub variant: VariantKind,
    pub m: EltJson,
    pub a1: String,
    pub a2: String,
    pub claims: Claims,
    pub verdicts: Verdicts,
    pub fixed: Option<usize>,
    pub cycles: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub contradictions: Vec<String>,
}

#[derive(Serialize)]
struct SearchOutput {
    grid: GridSpec,
    rows: Vec<Row>,
    skipped: Vec<Skipped>,
    totals: Totals,
}

#[derive(Serialize)]
struct Totals {
    rows: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

pub fn load_grid(path: Option<&Path>) -> CliResult<GridSpec> {
    match path {
        None => Ok(GridSpec::default()),
        Some(p) => Ok(serde_json::from_str(&fs::read_to_string(p)?)?),
    }
}

fn admissible(q: u64, p: u64) -> Vec<u64> {
    divisors(q * q - 1).into_iter().filter(|&r| r >= 3 && gcd(r, p) == 1).collect()
}

/// Expands the grid into jobs, in a fixed order, recording what was skipped.
fn expand(grid: &GridSpec) -> (Vec<Job>, Vec<Skipped>) {
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for &FieldEntry { p, k } in &grid.fields {
        let skip = |r: Option<u64>, detail: Option<String>, reason: String| Skipped { p, k, r, detail, reason };
        let ctx = match FieldCtx::new(p, k, None, None) {
            Ok(c) => Arc::new(c),
            Err(e) => {
                skipped.push(skip(None, None, e.to_string()));
                continue;
            }
        };
        let rs = grid.r.clone().unwrap_or_else(|| admissible(ctx.q() as u64, p as u64));
        for r in rs {
            if let Err(CliError::Constraint(e) | CliError::Failure(e)) = order_constraints(r, &ctx) {
                skipped.push(skip(Some(r), None, e));
                continue;
            }
            let factors = match all_quadratic_factors(r, &ctx) {
                Ok(f) => f,
                Err(e) => {
                    skipped.push(skip(Some(r), None, e.to_string()));
                    continue;
                }
            };
            let mut scalars = Vec::new();
            for text in &grid.m {
                match gen::scalar(&ctx, text) {
                    Ok(m) if !scalars.contains(&m) => scalars.push(m),
                    Ok(_) => {}
                    Err(e) => skipped.push(skip(Some(r), Some(format!("m={text}")), e.to_string())),
                }
            }
            let mut pairs = Vec::new();
            for text in &grid.a {
                match gen::coord_perm(&ctx, text, None) {
                    Ok((a1, n1)) => {
                        let a2 = a1.inverse();
                        pairs.push(((a1, n1), (a2, "inverse-of-a1".to_string())));
                    }
                    Err(e) => skipped.push(skip(Some(r), Some(format!("a1={text}")), e.to_string())),
                }
            }
            for i in 0..grid.independent_pairs {
                let (s1, s2) = (grid.independent_seed_base + 2 * i, grid.independent_seed_base + 2 * i + 1);
                let a1 = (CoordPerm::random(ctx.q(), s1), format!("random:{s1}"));
                let a2 = (CoordPerm::random(ctx.q(), s2), format!("random:{s2}"));
                pairs.push((a1, a2));
            }
            for &factor in &factors {
                for &variant in &grid.variants {
                    if variant == VariantKind::General {
                        skipped.push(skip(
                            Some(r),
                            Some("variant=general".into()),
                            "search covers type4 and type5".into(),
                        ));
                        continue;
                    }
                    for &m in &scalars {
                        for (a1, a2) in &pairs {
                            jobs.push(Job { ctx: ctx.clone(), r, factor, variant, m, a1: a1.clone(), a2: a2.clone() });
                        }
                    }
                }
            }
        }
    }
    skipped.dedup_by(|a, b| a.p == b.p && a.k == b.k && a.r == b.r && a.detail == b.detail && a.reason == b.reason);
    (jobs, skipped)
}

fn run_job(index: usize, job: &Job, univariate: bool) -> CliResult<Row> {
    let ctx = &job.ctx;
    let spec =
        ConstructionSpec::structured(ctx.clone(), job.factor, job.variant, job.m, job.a1.0.clone(), job.a2.0.clone())?;
    let sigma = build_sigma(&spec)?;
    let mut eval = evaluate(&spec, sigma.table(), false)?;
    if !univariate {
        eval.verdicts.univariate_roundtrip = crate::bundle::Check::Skip;
    }
    let contradictions = eval.contradictions();
    let cs = eval.cycles.as_ref();
    Ok(Row {
        index,
        p: ctx.p(),
        k: ctx.k(),
        q: ctx.q(),
        r: job.r,
        h0: elt_to_json(ctx, ctx.elt(Level::Fq, job.factor.h0())?),
        h1: elt_to_json(ctx, ctx.elt(Level::Fq, job.factor.h1())?),
        factor: job.factor.poly().to_string(),
        variant: job.variant,
        m: elt_to_json(ctx, ctx.elt(Level::Fq, job.m)?),
        a1: job.a1.1.clone(),
        a2: job.a2.1.clone(),
        claims: eval.claims,
        verdicts: eval.verdicts,
        fixed: cs.map(|c| c.fixed_points),
        cycles: cs.map(|c| c.lengths.iter().map(|(l, n)| format!("{l}^{n}")).collect::<Vec<_>>().join(" ")),
        passed: contradictions.is_empty(),
        contradictions,
    })
}

pub fn search(grid: GridSpec) -> CliResult<Report> {
    let (jobs, skipped) = expand(&grid);
    // `collect` on an indexed parallel iterator keeps grid order.
    let rows: Vec<Row> =
        jobs.par_iter().enumerate().map(|(i, job)| run_job(i, job, grid.univariate)).collect::<CliResult<_>>()?;
    let t = tally(rows.iter().map(|r| &r.passed));
    let totals = Totals { rows: rows.len(), passed: t["passed"], failed: t["failed"], skipped: skipped.len() };
    let contradictions: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("row {}: {}", r.index, r.contradictions.join("; ")))
        .collect();

    let b = |x: bool| x.to_string();
    let csv_rows = rows
        .iter()
        .map(|row| {
            vec![
                row.index.to_string(),
                row.q.to_string(),
                row.r.to_string(),
                coords_text(&row.h0),
                coords_text(&row.h1),
                row.variant.to_string(),
                coords_text(&row.m),
                row.a1.clone(),
                row.a2.clone(),
                b(row.claims.pp),
                b(row.claims.cpp),
                b(row.claims.r_regular),
                b(row.verdicts.pp),
                b(row.verdicts.cpp),
                b(row.verdicts.r_regular),
                b(row.verdicts.matches_spec),
                row.verdicts.decomposition.as_str().into(),
                row.verdicts.univariate_roundtrip.as_str().into(),
                row.fixed.map(|f| f.to_string()).unwrap_or_default(),
                row.cycles.clone().unwrap_or_default(),
                b(row.passed),
            ]
        })
        .collect();
    let header = vec![
        "index",
        "q",
        "r",
        "h0",
        "h1",
        "variant",
        "m",
        "a1",
        "a2",
        "claim_pp",
        "claim_cpp",
        "claim_r_regular",
        "pp",
        "cpp",
        "r_regular",
        "matches_spec",
        "decomposition",
        "univariate",
        "fixed",
        "cycles",
        "passed",
    ];
    let mut report = Report::new(&SearchOutput { grid, rows, skipped, totals }, header, csv_rows)?;
    report.contradictions = contradictions;
    Ok(report)
}
