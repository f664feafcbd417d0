//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("spectrum is not strictly increasing at level {level}: ε_{level} = {value} ≤ ε_{} = {prev}", level - 1)]
    NonMonotoneSpectrum { level: usize, value: f64, prev: f64 },

    #[error("spectrum must be shifted so that ε₀ = 0 before building states (found ε₀ = {eps0})")]
    UnshiftedSpectrum { eps0: f64 },

    #[error("εₙ! overflowed even in log-space at level {level}")]
    Overflow { level: usize },

    #[error("J = {j} is outside the convergence domain [0, {radius})")]
    OutsideConvergenceDomain { j: f64, radius: f64 },

    #[error("series tail could not be certified below {tol} within {depth} terms")]
    NonConvergent { tol: f64, depth: usize },

    #[error("moment targets are not exactly representable as rationals: {0}")]
    PrecisionLoss(String),

    #[error("quadrature could not meet tolerance {tol} at {nodes} nodes")]
    QuadratureFailure { tol: f64, nodes: usize },

    #[error("test function fails the derivative-norm check at order {order}: ∫|f^({order})| = {norm}")]
    TestFunctionOutOfClass { order: usize, norm: f64 },

    #[error("no closed-form measure is known for model `{0}`")]
    NoClosedForm(String),

    #[error("branch index {index} out of range (model has {count} branches)")]
    BranchOutOfRange { index: usize, count: usize },

    #[error("ket was built from a different spectrum ({expected} vs {found})")]
    SpectrumMismatch { expected: String, found: String },

    #[error("truncation K = {k} is unsafe for this operation: {reason}")]
    TruncationUnsafe { k: usize, reason: String },

    #[error("grid spacing h = {h} too coarse: {reason}")]
    GridTooCoarse { h: f64, reason: String },

    #[error("coupling matrix is not hermitian")]
    NotHermitian,

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
