use thiserror::Error;

/// Errors produced by the numerical layer.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its domain restriction (e.g. `|rho| >= 1`).
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// Requested quadrature order outside the supported range.
    #[error("quadrature order {0} not in 1..=256")]
    QuadOrder(usize),

    /// An integrand evaluated to NaN or infinity at a quadrature node.
    #[error("non-finite value in {context} at node {node}")]
    NonFinite { context: &'static str, node: usize },

    /// Vector lengths or matrix shapes do not agree.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A truncated series was asked for more terms than the evaluator supports.
    #[error("series budget exceeded: {requested} terms requested, cap is {cap}")]
    SeriesBudget { requested: usize, cap: usize },

    /// Integrand degree exceeds what the quadrature rule integrates exactly.
    #[error("polynomial degree {degree} exceeds quadrature exactness budget {budget}")]
    DegreeOverflow { degree: usize, budget: usize },

    /// Linear solve failed (after the full jitter ladder, for Cholesky).
    #[error("linear solve failed: {0}")]
    Solve(String),

    /// A matrix expected to be symmetric was not.
    #[error("matrix not symmetric: max |G - G^T| = {0:.3e}")]
    Asymmetric(f64),

    /// CSV ingestion failure with the offending location.
    #[error("csv error at row {row}, column {col}: {msg}")]
    Csv { row: usize, col: usize, msg: String },

    /// Filesystem / serialization trouble.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
