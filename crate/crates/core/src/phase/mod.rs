//! Exact term algebra over `{cos x, sin x, w = σ₀′}` with coefficients in
//! `Q[U]`, and the all-orders WKB phase recursion built on it.

mod canonical;
mod expr;
mod recursion;

pub use canonical::{
    closed_form_c0, closed_form_c0_value, coefficient_dump, extract_canonical, max_l,
    parse_rational, sin_parity, w_power, CanonicalPhase, CoefficientEntry, CoefficientRecord,
};
pub use expr::{normalize, Monomial, NumericPhase, NumericTerm, PhaseExpr, PhaseTerm};
pub use recursion::{wkb_recursion_step, WkbSeries, N_MAX};
