use thiserror::Error;

/// Errors surfaced by the exact layer and the quadrature engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ladder algebra requires Gaussian width 1, got {0}")]
    WidthNotOne(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact Lᵖ norms need an even integer p ≥ 2, got {0}; use quadrature instead")]
    NonEvenExponent(String),

    #[error(
        "quadrature did not converge: last value {last:.6e}, relative change {change:.3e} \
         after {levels} refinements ({detail})"
    )]
    QuadratureNonConvergence {
        last: f64,
        change: f64,
        levels: u32,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
