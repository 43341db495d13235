use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A recursion output does not have the canonical shape
    /// `w^(1-3n) · sin^f(n) · Σ C_{n,l} cos^(2l-3n)`.
    #[error("canonical structure violated at order {order}: {detail}")]
    StructureViolation { order: usize, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// The 1/U series only converges for 4U > 1.
    #[error("series outside its convergence domain: 4U = {four_u} must exceed 1")]
    ConvergenceDomain { four_u: f64 },

    #[error("branch tracking lost continuity of w after {samples} samples")]
    BranchDiscontinuity { samples: usize },

    #[error("contour integral is not real: {re} + {im}i")]
    NonRealResult { re: f64, im: f64 },

    #[error("contour quadrature did not settle: |I(2N) - I(N)| = {change} at N = {samples}")]
    SampleNonConvergence { samples: usize, change: f64 },

    #[error("numerical overflow while shooting at E = {energy}")]
    NumericalOverflow { energy: f64 },

    #[error("no eigenvalue bracket found for m = {m}, l = {l}")]
    BracketFailure { m: u32, l: u32 },

    #[error("node count mismatch for m = {m}, l = {l}: expected {expected}, found {found}")]
    NodeCountMismatch {
        m: u32,
        l: u32,
        expected: usize,
        found: usize,
    },

    #[error("quadrature did not converge: doubling nodes changed the result by {change}")]
    QuadratureNonConvergence { change: f64 },

    #[error("invalid configuration: {field}: {message}")]
    InvalidConfig { field: String, message: String },

    #[error("acceptance gate failed: {0}")]
    GateFailure(String),

    #[error("output error: {0}")]
    Output(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            message: message.into(),
        }
    }
}
