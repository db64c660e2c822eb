//! Textual generators for the maps and scalars a construction needs.
//!
//! * coordinate maps `a₁, a₂` on `F_q`: `identity`, `monomial:k`,
//!   `monomial` (smallest admissible `k`), `random:seed`, and for `a₂` only
//!   `inverse-of-a1`;
//! * full maps `τ₁, τ₂` on `F_{q^2}`: `identity`, `random:seed`,
//!   `linear:m1,m2,m3,m4`, and for `τ₂` only `inverse-of-tau1`;
//! * the scalar `m`: a canonical `F_q` index or `generator`.

use std::sync::Arc;

use cyclofactor_core::{CoordPerm, FieldCtx, Level, Mat2, PermMap};

use crate::error::{CliError, CliResult};

fn bad(kind: &str, text: &str) -> CliError {
    CliError::constraint(format!("unrecognised {kind} generator {text:?}"))
}

/// Builds a coordinate permutation. `partner` is the already-built `a₁`
/// when resolving `inverse-of-a1`. Returns the table and its canonical name.
pub fn coord_perm(ctx: &FieldCtx, text: &str, partner: Option<&CoordPerm>) -> CliResult<(CoordPerm, String)> {
    let q = ctx.q();
    let (head, arg) = text.split_once(':').map_or((text, None), |(h, a)| (h, Some(a)));
    let perm = match (head, arg) {
        ("identity", None) => CoordPerm::identity(q),
        ("monomial", None) => {
            let k = CoordPerm::smallest_monomial_exponent(q);
            return Ok((CoordPerm::monomial(ctx, k)?, format!("monomial:{k}")));
        }
        ("monomial", Some(k)) => CoordPerm::monomial(ctx, k.parse().map_err(|_| bad("monomial", text))?)?,
        ("random", Some(s)) => CoordPerm::random(q, s.parse().map_err(|_| bad("random", text))?),
        ("inverse-of-a1", None) => {
            partner.ok_or_else(|| CliError::constraint("inverse-of-a1 is only valid for a2"))?.inverse()
        }
        _ => return Err(bad("coordinate", text)),
    };
    Ok((perm, text.to_string()))
}

/// Builds `τ₁` or `τ₂` on `F_{q^2}`.
pub fn full_perm(ctx: &Arc<FieldCtx>, text: &str, partner: Option<&PermMap>) -> CliResult<PermMap> {
    let (head, arg) = text.split_once(':').map_or((text, None), |(h, a)| (h, Some(a)));
    match (head, arg) {
        ("identity", None) => Ok(PermMap::identity(ctx.clone())),
        ("random", Some(s)) => Ok(PermMap::random(ctx.clone(), s.parse().map_err(|_| bad("random", text))?)),
        ("linear", Some(entries)) => {
            let m = matrix(ctx, entries)?;
            if !m.is_invertible(ctx) {
                return Err(CliError::constraint(format!("{text}: matrix is singular")));
            }
            Ok(PermMap::from_matrix(ctx.clone(), &m))
        }
        ("inverse-of-tau1", None) => {
            Ok(partner.ok_or_else(|| CliError::constraint("inverse-of-tau1 is only valid for tau2"))?.invert()?)
        }
        _ => Err(bad("permutation", text)),
    }
}

/// `m1,m2,m3,m4` as canonical `F_q` indices, row-major.
pub fn matrix(ctx: &FieldCtx, text: &str) -> CliResult<Mat2> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::constraint(format!("matrix {text:?} must be four integers")))?;
    let entries: [u32; 4] =
        parts.try_into().map_err(|_| CliError::constraint(format!("matrix {text:?} must have four entries")))?;
    Ok(Mat2::from_indices(ctx, entries)?)
}

/// The nonzero scalar `m` as a canonical `F_q` index.
pub fn scalar(ctx: &FieldCtx, text: &str) -> CliResult<u32> {
    let m = if text == "generator" {
        ctx.primitive_element(Level::Fq).index()
    } else {
        text.parse().map_err(|_| CliError::constraint(format!("m must be an index or \"generator\", got {text:?}")))?
    };
    if m == 0 || m >= ctx.q() {
        return Err(CliError::constraint(format!("m = {m} must be a nonzero element of F_{}", ctx.q())));
    }
    Ok(m)
}
