//! Error type shared by every module in the crate.
//!
//! Numerical diagnostics are carried as `f64` regardless of the working
//! scalar so the variants stay object-simple and printable.

use thiserror::Error;

/// Everything that can go wrong while building or analysing a scenario.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix entry count {found} does not match dim {dim} (expected {})", dim * dim)]
    BadEntryCount { dim: usize, found: usize },

    #[error("unsupported matrix dimension {dim} (must be between 1 and {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("observable '{label}' is not dichotomous: |X^2 - I| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotDichotomous {
        label: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("matrix is not a density matrix: smallest eigenvalue {min_eigenvalue:.3e} is negative beyond tolerance")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not a density matrix: trace {trace:.9} differs from 1 beyond tolerance")]
    TraceNotOne { trace: f64 },

    #[error("state vector has vanishing norm")]
    ZeroStateVector,

    #[error("need at least {min} observables, got {found}")]
    TooFewObservables { found: usize, min: usize },

    #[error("{n} variables exceed the exhaustive-enumeration cap of {max}")]
    TooManyVariables { n: usize, max: usize },

    #[error("observables {i} and {j} are incompatible: commutator residual {residual:.3e}")]
    IncompatiblePair { i: usize, j: usize, residual: f64 },

    #[error("sign pattern has {found} entries, expected {expected}")]
    SignPatternLength { expected: usize, found: usize },

    #[error("sign pattern entries must be +1 or -1, got {value}")]
    BadSign { value: i8 },

    #[error("sign pattern with an even number of minus signs ({minus_count}) is not supported by the violation criterion")]
    UnsupportedSignPattern { minus_count: usize },

    #[error("correlation value {value} lies outside [-1, 1]")]
    CorrelationOutOfRange { value: f64 },

    #[error("invalid correlation data: {reason}")]
    InvalidCorrelationData { reason: String },

    #[error("probability {value:.3e} is negative beyond the clamping tolerance (compatibility breach upstream)")]
    NegativeProbability { value: f64 },

    #[error("probability has imaginary part {value:.3e} beyond tolerance (compatibility breach upstream)")]
    ComplexProbability { value: f64 },

    #[error("distribution sums to {sum:.9}, not 1 within tolerance")]
    NotNormalized { sum: f64 },

    #[error("index {index} is not a variable of this distribution")]
    SubsetNotContained { index: usize },

    #[error("duplicate variable index {index}")]
    DuplicateIndex { index: usize },

    #[error("eigensolver failed to converge for dimension {dim}")]
    EigensolverFailure { dim: usize },

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("internal numerical failure: {0}")]
    Numerical(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
