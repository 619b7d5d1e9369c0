use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Hermite-number order must be at least 2, got {0}")]
    InvalidOrder(u32),

    #[error("fractional Hermite index {halves}/2 is not supported for order {order}")]
    UnsupportedFractionalIndex { order: u32, halves: u32 },

    #[error("umbral projection needs a real root of a negative weight ({weight}) at exponent {halves}/2")]
    NegativeWeightRoot { weight: f64, halves: u32 },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e} after {levels} levels")]
    NonConvergence {
        estimate: f64,
        tolerance: f64,
        levels: usize,
    },

    #[error("non-finite integrand value at x = {0}")]
    NonFinite(f64),

    #[error("Airy argument {0} is outside the implementation envelope")]
    AiryEnvelope(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("evolution is ill-posed in this direction (m = {m}, sign*y = {signed_y}); opt in explicitly to run it")]
    IllPosed { m: u32, signed_y: f64 },

    #[error("interpolation point {0} lies beyond the padded domain")]
    InterpolationRange(f64),

    #[error("series truncation budget exceeded: {0}")]
    TruncationBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
