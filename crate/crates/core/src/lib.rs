//! Exact finite-field machinery for building and exhaustively checking
//! `r`-regular complete permutation polynomials over quadratic extensions
//! `F_{q^2}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: `F_p`, `F_q = F_p[y]/(g)`, `F_{q^2} = F_q[α]/(h_α)` with dense
//!   canonical element indices.
//! * [`poly`]: dense univariate polynomials, cyclotomic polynomials and their
//!   quadratic factors.
//! * [`linmap`]: 2×2 matrices over `F_q` acting on `F_q^2`.
//! * [`permcycle`]: permutation tables on `F_{q^2}` and their cycle structure.
//! * [`construct`]: the `σ = τ₁ ∘ σ_M ∘ τ₂` builders, the `σ + e`
//!   decompositions and the Feistel / MISTY round maps.
//! * [`univariate`]: dual bases, the trace form and Lagrange/Newton
//!   interpolation back to a polynomial in `F_{q^2}[x]`.
//! * [`json`]: the serialised forms shared with the command line tool.

pub mod construct;
pub mod error;
pub mod field;
pub mod json;
pub mod linmap;
pub mod numtheory;
pub mod permcycle;
pub mod poly;
pub mod univariate;

pub use construct::{
    build_sigma, decomposition_matches, decomposition_type4, decomposition_type5, feistel_omega, matrix_type4,
    matrix_type5, misty_phi, misty_psi, Claims, ConstructionSpec, CoordPerm, Decomposition, Structured, Variant,
    VariantKind,
};
pub use error::{Error, Result};
pub use field::{Elt, FieldCtx, FieldSpec, Level, FIELD_CAP};
pub use linmap::Mat2;
pub use numtheory::euler_phi;
pub use permcycle::{CycleStructure, PermMap};
pub use poly::{all_quadratic_factors, cyclotomic, quadratic_factor, Poly, Provenance, QuadFactor, Selector};
pub use univariate::{dual_basis, eval_trace_form, to_univariate, DualBasis};
