//! Crate-wide error type.

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numerical routines, data loaders and the
/// experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric (relative asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("singular values must be non-negative")]
    BadSpectrum,

    #[error("columns are not orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("basis completion failed: candidate vectors are rank-deficient")]
    RankDeficient,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimMismatch { expected: usize, actual: usize },

    #[error("batch is empty")]
    EmptyBatch,

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("non-finite gradient at step {0}")]
    NonFiniteGradient(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("value out of range at line {line}: {value}")]
    Range { line: usize, value: i64 },

    #[error("infeasible split: {requested} rows requested but only {available} available")]
    Infeasible { requested: usize, available: usize },

    #[error("sampling distribution shape covers {shape} parameters but objective has {dim}")]
    ShapeMismatch { shape: usize, dim: usize },

    #[error("block partition overlaps at index {0}")]
    BlockOverlap(usize),

    #[error("spectrum has no positive leading eigenvalue")]
    ZeroSpectrum,

    #[error("vector is not unit-norm (|norm - 1| = {0:.3e})")]
    NotUnit(f64),

    #[error("step index {step} outside schedule horizon {horizon}")]
    StepOutOfRange { step: usize, horizon: usize },

    #[error("learning-rate bounds must be powers of 10 with 0 < lo <= hi")]
    BadBounds,

    #[error("sweep contains no runs for the requested selection")]
    EmptySweep,

    #[error("bad artifact format: {0}")]
    Format(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
