//! Cycle contextuality scenarios over dichotomous quantum observables.
//!
//! The crate builds `n`-cycle compatibility scenarios from Hermitian
//! observables, computes exact quantum correlations and joint outcome
//! distributions, derives classical (noncontextual) bounds and
//! joint-distribution feasibility by exhaustive enumeration and linear
//! programming, decides violation of the 4-cycle inequality through the
//! commutator-product criterion with an explicit witness state, and
//! simulates seeded per-context measurements with standard errors and a
//! no-signaling audit.
//!
//! All numerics are generic over the real scalar via [`Scalar`]
//! (`f32`/`f64`); the `*64` aliases below fix the common double-precision
//! types. Every value is immutable after construction and every operation is
//! a pure function, so the whole crate is safe for concurrent use.

mod chsh;
mod classical;
mod eigen;
mod error;
mod jpd;
mod matrix;
mod observable;
mod sampler;
mod scalar;
mod scenario;
mod simplex;
mod state;
#[cfg(test)]
pub(crate) mod testmat;

pub use chsh::{
    chsh_from_local_pairs, chsh_operator, commutator_product, quantum_value, violation_analysis,
    CommutatorProduct, ViolationAnalysis,
};
pub use classical::{
    cycle_value, jpd_exists, noncontextual_bound, original_bell_check, original_bell_check_with,
    suppes_zanotti_check, BoundResult, ConstraintKind, FeasibilityResult, InfeasibilityCertificate,
    OrientationCheck, OriginalBellReport, SuppesZanottiReport, MAX_ENUMERATION, MAX_FEASIBILITY,
};
pub use eigen::{spectral_decomposition, spectral_norm, SpectralDecomposition};
pub use error::{Error, Result};
pub use jpd::{
    average, context_jpd, context_jpd_indexed, correlation, exact_correlations, full_jpd,
    CorrelationData, JointDistribution, MAX_JOINT_VARIABLES,
};
pub use matrix::{commutator, commutator_residual, ComplexMatrix, MAX_DIM};
pub use observable::HermitianObservable;
pub use sampler::{
    estimate_scenario, sample_context, split_seed, ContextSample, EmpiricalData, PairCounts,
    SampleConfig,
};
pub use scalar::{real, Scalar};
pub use scenario::{CompatibilityReport, CycleScenario, EdgeCompatibility, SignPattern, MIN_CYCLE};
pub use state::QuantumState;

/// Complex number over the working scalar.
pub type Complex<T> = num_complex::Complex<T>;

/// Double-precision complex number.
pub type Complex64 = num_complex::Complex<f64>;
/// Double-precision matrix.
pub type Matrix64 = ComplexMatrix<f64>;
/// Double-precision observable.
pub type Observable64 = HermitianObservable<f64>;
/// Double-precision state.
pub type State64 = QuantumState<f64>;
/// Double-precision scenario.
pub type Scenario64 = CycleScenario<f64>;
/// Double-precision correlation data.
pub type CorrelationData64 = CorrelationData<f64>;

/// Single-precision matrix.
pub type Matrix32 = ComplexMatrix<f32>;
/// Single-precision observable.
pub type Observable32 = HermitianObservable<f32>;
/// Single-precision state.
pub type State32 = QuantumState<f32>;
/// Single-precision scenario.
pub type Scenario32 = CycleScenario<f32>;
