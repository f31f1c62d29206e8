//! Error types shared across the crate.
//!
//! Validation errors name the violated invariant and carry the measured
//! residual; numerical errors carry enough state to diagnose the failure
//! (iteration counts, last estimates). [`Error::is_validation`] separates
//! the two classes for callers that map errors to exit codes.

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Matrix entry count does not match the declared dimension.
    #[error("matrix with dim {dim} needs {expected} entries, got {actual}")]
    BadEntryCount {
        dim: usize,
        expected: usize,
        actual: usize,
    },

    /// A value that must be finite is NaN or infinite.
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    /// Hermiticity residual max|M - M†| exceeds tolerance.
    #[error("matrix is not Hermitian: max|M - M†| = {residual:.3e} exceeds 1e-10")]
    NotHermitian { residual: f64 },

    /// Trace differs from 1 beyond tolerance.
    #[error("trace is not 1: |tr - 1| = {residual:.3e} exceeds 1e-10")]
    TraceNotOne { residual: f64 },

    /// Minimum eigenvalue falls below the PSD tolerance.
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} < -1e-10")]
    NotPSD { min_eigenvalue: f64 },

    /// Iterative solver hit its iteration cap.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// Adaptive quadrature hit its node cap before stabilizing.
    #[error(
        "quadrature did not converge within {nodes} nodes \
         (last two estimates {previous:.12e}, {last:.12e})"
    )]
    QuadratureNoConvergence {
        nodes: usize,
        previous: f64,
        last: f64,
    },

    /// Objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Letter eigenvalues must be strictly increasing.
    #[error(
        "strictly increasing eigenvalues required: x[{index}] = {left} \
         is not below x[{next}] = {right}",
        next = index + 1
    )]
    EigenvaluesNotIncreasing { index: usize, left: f64, right: f64 },

    /// A mixture weight is negative or non-finite.
    #[error("weight[{index}] = {value} is not a finite nonnegative number")]
    InvalidWeight { index: usize, value: f64 },

    /// Mixture weights do not sum to 1.
    #[error("weights sum to {sum} (must be 1 within 1e-10)")]
    WeightSumNotOne { sum: f64 },

    /// A probability is negative or non-finite.
    #[error("probability[{index}] = {value} is not a finite nonnegative number")]
    InvalidProbability { index: usize, value: f64 },

    /// Probabilities do not sum to 1.
    #[error("probabilities sum to {sum} (must be 1 within 1e-10)")]
    ProbabilitySumNotOne { sum: f64 },

    /// Needle standard deviation must be positive and finite.
    #[error("sigma = {value} (must be positive and finite)")]
    InvalidSigma { value: f64 },

    /// Requested tolerance must be positive and finite.
    #[error("tolerance = {value} (must be positive and finite)")]
    InvalidTolerance { value: f64 },

    /// Needle density underflowed: the reading is too far from every mean.
    #[error("needle density {density:.3e} below 1e-300; posterior undefined")]
    ZeroDensity { density: f64 },

    /// Codebook size round(2^(nR)) came out below 2.
    #[error(
        "rate {rate_bits} with block length {n} gives {m} codewords; \
         round(2^(nR)) must be at least 2"
    )]
    RateTooLowForTwoCodewords { n: usize, rate_bits: f64, m: u64 },

    /// Vector length differs from the expected block length.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// Dimension argument outside the operation's domain.
    #[error("dimension {dim} not supported: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    /// Free-form argument validation failure.
    #[error("invalid arguments: {reason}")]
    InvalidArgs { reason: String },
}

impl Error {
    /// True for input/invariant violations (a caller mistake), false for
    /// numerical failures arising during an otherwise valid computation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence { .. }
                | Error::QuadratureNoConvergence { .. }
                | Error::ZeroDensity { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
