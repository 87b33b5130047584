//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis must be nonempty")]
    EmptyBasis,
    #[error("step budget exceeded after {0} reductions")]
    BudgetExceeded(usize),
    #[error("elimination count {l} exceeds variable count {nvars}")]
    BadElimination { l: usize, nvars: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("latent probabilities must lie strictly inside (0,1)")]
    DegenerateLatent,
    #[error("element is not a quadratic in a single latent parameter: {0}")]
    NotQuadratic(String),
    #[error("distribution is infeasible for the model: {0}")]
    Infeasible(String),
    #[error("unknown class id: {0}")]
    UnknownClass(String),
    #[error("enumeration cap exceeded: n={n} > cap={cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
