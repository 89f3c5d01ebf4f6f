//! Quantum states as validated density matrices. Pure states enter as
//! rank-one projectors so that one representation serves everywhere.

use num_complex::Complex;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// A density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> QuantumState<T> {
    /// Validates and wraps a density matrix.
    pub fn density(matrix: ComplexMatrix<T>) -> Result<Self> {
        matrix.require_hermitian()?;
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > T::STATE_TOL || trace.im.abs() > T::STATE_TOL {
            return Err(Error::TraceNotOne {
                trace: trace.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (values, _) = hermitian_eigen(&matrix)?;
        if let Some(&min) = values.first() {
            if min < -T::STATE_TOL {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { matrix })
    }

    /// Builds the rank-one density matrix of a pure state. The amplitude
    /// vector is normalized; a zero vector is rejected.
    pub fn pure(amplitudes: &[Complex<T>]) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 {
            return Err(Error::ZeroStateVector);
        }
        let norm_sq = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x);
        if norm_sq <= T::epsilon() {
            return Err(Error::ZeroStateVector);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(amplitudes[r] * amplitudes[c].conj() / Complex::new(norm_sq, T::zero()));
            }
        }
        Ok(Self {
            matrix: ComplexMatrix::from_parts(dim, entries),
        })
    }

    /// The maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = T::one() / T::from_usize(dim).unwrap();
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(scale),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Tr(rho A)` as a complex number; callers take the real part where the
    /// algebra guarantees reality.
    pub(crate) fn trace_with(&self, a: &ComplexMatrix<T>) -> Complex<T> {
        (&self.matrix * a).trace()
    }
}
