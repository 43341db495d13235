//! All-orders WKB and SWKB quantization of the angular-momentum operator.
//!
//! The angular equation is brought to `−F″ + U/cos²x F = E F` with
//! `U = m² − 1/4`, `E = λ² + 1/4`. The crate
//!
//! * generates every WKB phase derivative exactly ([`phase`]),
//! * quantizes with the resummed series ([`series`]),
//! * checks the closed-form loop integrals numerically ([`contour`]),
//! * solves the eigenproblem independently by shooting ([`oracle`]),
//! * runs leading-order SWKB ([`swkb`]),
//! * and assembles comparison tables ([`report`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contour;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod phase;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod series;
pub mod swkb;

pub use error::{Error, Result};
pub use exact::{ExactScalar, UEPoly, UPoly};
pub use phase::{CanonicalPhase, PhaseExpr, WkbSeries, N_MAX};
pub use scalar::Real;
pub use series::ProblemParams;
pub use swkb::SusyContext;

pub type QuantizationRecord64 = series::QuantizationRecord<f64>;
pub type QuantizationRecord32 = series::QuantizationRecord<f32>;
pub type ContourValue64 = contour::ContourValue<f64>;
pub type IntegralReport64 = contour::IntegralReport<f64>;
pub type OracleConfig64 = oracle::OracleConfig<f64>;
pub type OracleResult64 = oracle::OracleResult<f64>;
pub type CbcLevel64 = swkb::CbcLevel<f64>;
pub type CbcLevel32 = swkb::CbcLevel<f32>;
