//! Scalar abstraction: every numerical routine in this crate is generic over
//! the real scalar type through [`Scalar`], implemented for `f32` and `f64`.
//!
//! Validation thresholds live here as associated constants so that each
//! precision gets limits matched to its eigensolver noise floor. The `f64`
//! values are the reference thresholds; the `f32` values are loosened to sit
//! a comparable margin above single-precision round-off.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar for all matrix, spectral and probabilistic computations.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + Sum<Self> + Send + Sync + fmt::Debug + fmt::Display + 'static
{
    /// Max-entry deviation allowed between a matrix and its adjoint.
    const HERMITICITY_TOL: Self;
    /// Max-entry deviation allowed between the square of a dichotomous
    /// observable and the identity.
    const DICHOTOMY_TOL: Self;
    /// Eigenvalues closer than this are merged into one spectral projector.
    const DEGENERACY_TOL: Self;
    /// Default commutator residual below which two observables count as
    /// compatible.
    const COMPATIBILITY_TOL: Self;
    /// Margin for the strict comparisons "nonzero product" and
    /// "supremum above the classical bound".
    const CONDITION_TOL: Self;
    /// Tolerance on density-matrix eigenvalue positivity and unit trace.
    const STATE_TOL: Self;
    /// Probabilities in `[-PROB_CLAMP, 0)` are clamped to zero; anything more
    /// negative is an error.
    const PROB_CLAMP: Self;
    /// Allowed deviation of a probability sum from one (before renormalizing)
    /// and of a single probability from the real axis.
    const PROB_TOL: Self;
    /// Equality tolerance for the linear feasibility solver.
    const FEASIBILITY_TOL: Self;
    /// Slack allowed when checking that correlation inputs lie in `[-1, 1]`.
    const RANGE_TOL: Self;
    /// How close a correlation must be to one to count as perfect.
    const PERFECT_CORRELATION_TOL: Self;
}

impl Scalar for f64 {
    const HERMITICITY_TOL: f64 = 1e-10;
    const DICHOTOMY_TOL: f64 = 1e-9;
    const DEGENERACY_TOL: f64 = 1e-8;
    const COMPATIBILITY_TOL: f64 = 1e-9;
    const CONDITION_TOL: f64 = 1e-7;
    const STATE_TOL: f64 = 1e-10;
    const PROB_CLAMP: f64 = 1e-10;
    const PROB_TOL: f64 = 1e-9;
    const FEASIBILITY_TOL: f64 = 1e-7;
    const RANGE_TOL: f64 = 1e-9;
    const PERFECT_CORRELATION_TOL: f64 = 1e-6;
}

impl Scalar for f32 {
    const HERMITICITY_TOL: f32 = 1e-4;
    const DICHOTOMY_TOL: f32 = 1e-3;
    const DEGENERACY_TOL: f32 = 1e-3;
    const COMPATIBILITY_TOL: f32 = 1e-3;
    const CONDITION_TOL: f32 = 1e-3;
    const STATE_TOL: f32 = 1e-4;
    const PROB_CLAMP: f32 = 1e-4;
    const PROB_TOL: f32 = 1e-3;
    const FEASIBILITY_TOL: f32 = 1e-3;
    const RANGE_TOL: f32 = 1e-3;
    const PERFECT_CORRELATION_TOL: f32 = 1e-3;
}

/// Converts an `f64` literal into the working scalar type.
///
/// Panics only if the target type cannot represent any approximation of the
/// value, which cannot happen for the finite literals used in this crate.
pub fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 converts to every supported scalar")
}
