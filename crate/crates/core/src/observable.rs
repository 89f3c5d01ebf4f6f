//! Hermitian observables, optionally validated dichotomous (spectrum in
//! {-1, +1}), the raw material of every scenario in this crate.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

/// A labelled Hermitian matrix representing a measurable quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable<T> {
    matrix: ComplexMatrix<T>,
    label: String,
    dichotomous: bool,
}

impl<T: Scalar> HermitianObservable<T> {
    /// Validates Hermiticity only. The observable may have any real spectrum.
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix<T>) -> Result<Self> {
        matrix.require_hermitian()?;
        Ok(Self {
            matrix,
            label: label.into(),
            dichotomous: false,
        })
    }

    /// Validates Hermiticity and that the square is the identity, i.e. all
    /// eigenvalues are plus or minus one within tolerance.
    pub fn dichotomous(label: impl Into<String>, matrix: ComplexMatrix<T>) -> Result<Self> {
        let label = label.into();
        matrix.require_hermitian()?;
        let square = &matrix * &matrix;
        let deviation = (&square - &ComplexMatrix::identity(matrix.dim())).max_entry_norm();
        if deviation > T::DICHOTOMY_TOL {
            return Err(Error::NotDichotomous {
                label,
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tolerance: T::DICHOTOMY_TOL.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            matrix,
            label,
            dichotomous: true,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_dichotomous(&self) -> bool {
        self.dichotomous
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}
