//! Error types shared across the workbench.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("table entry `{0}` is not a signed basis element")]
    BadTableEntry(String),

    #[error("table `{0}` is not unital (row/column of 1 must be the identity)")]
    NotUnital(String),

    #[error("element is singular (zero or a zero divisor) and has no inverse")]
    SingularElement,

    #[error("series did not converge within {max_terms} terms (tol {tol})")]
    NoConvergence { max_terms: usize, tol: f64 },

    #[error("power of non-associative algebra `{0}` is ambiguous for exponents > 2")]
    NonAssociativePower(String),

    #[error("signal sample {index} escapes the declared subalgebra")]
    MalformedSignal { index: usize },

    #[error("grid too coarse: need at least {needed} points, got {got}")]
    GridTooCoarse { needed: usize, got: usize },

    #[error("wave is identically zero")]
    ZeroWave,

    #[error("null probability is degenerate (exactly 0 or 1); chi-square undefined")]
    DegenerateExpectation,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
