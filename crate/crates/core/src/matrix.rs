//! Dense complex matrices sized for few-qubit operator algebra.
//!
//! Matrices are immutable after construction and every operation returns a
//! fresh value, so the whole module is safe to use from any number of
//! threads. Entries are stored row-major.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest dimension accepted when a matrix is built from raw entries.
///
/// Everything in this crate lives in small tensor-product spaces; the cap is
/// generous headroom that still rejects nonsensical input sizes early.
pub const MAX_DIM: usize = 256;

/// A dense `dim x dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, validating the shape.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension { dim, max: MAX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Internal constructor for results of arithmetic, which may outgrow
    /// [`MAX_DIM`] through Kronecker products.
    pub(crate) fn from_parts(dim: usize, entries: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_parts(dim, vec![Complex::new(T::zero(), T::zero()); dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[T]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        )
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn from_diagonal(diag: &[T]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &x) in diag.iter().enumerate() {
            m.entries[i * dim + i] = Complex::new(x, T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.entries[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            t += self.entries[i * self.dim + i];
        }
        t
    }

    /// Largest entry modulus.
    pub fn max_entry_norm(&self) -> T {
        self.entries
            .iter()
            .map(|e| e.norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Max-entry norm of `self - self^dagger`.
    pub fn hermiticity_deviation(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for r in 0..n {
            for c in 0..n {
                let d = (self.entries[r * n + c] - self.entries[c * n + r].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: T) -> bool {
        self.hermiticity_deviation() <= tolerance
    }

    /// Fails with [`Error::NotHermitian`] when the deviation exceeds the
    /// crate-wide Hermiticity tolerance.
    pub fn require_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation <= T::HERMITICITY_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tolerance: T::HERMITICITY_TOL.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    /// The Hermitian part `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let half = Complex::new(real_half::<T>(), T::zero());
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[r * n + c] =
                    (self.entries[r * n + c] + self.entries[c * n + r].conj()) * half;
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_parts(self.dim, self.entries.iter().map(|&e| e * factor).collect())
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Kronecker product. The result has dimension `self.dim * other.dim`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = Self::zeros(dim);
        for ar in 0..n {
            for ac in 0..n {
                let a = self.entries[ar * n + ac];
                for br in 0..m {
                    for bc in 0..m {
                        out.entries[(ar * m + br) * dim + (ac * m + bc)] =
                            a * other.entries[br * m + bc];
                    }
                }
            }
        }
        out
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "matrix dimensions differ: {} vs {}",
            self.dim, other.dim
        );
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        Self::from_parts(
            self.dim,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        Self::from_parts(
            self.dim,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        out
    }
}

fn real_half<T: Scalar>() -> T {
    T::one() / (T::one() + T::one())
}

/// `a + b`; panics when dimensions differ.
impl<T: Scalar> std::ops::Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        ComplexMatrix::add(self, rhs)
    }
}

/// `a - b`; panics when dimensions differ.
impl<T: Scalar> std::ops::Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        ComplexMatrix::sub(self, rhs)
    }
}

/// Matrix product; panics when dimensions differ.
impl<T: Scalar> std::ops::Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        ComplexMatrix::mul(self, rhs)
    }
}

impl<T: Scalar> std::ops::Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.scale_real(-T::one())
    }
}

/// `ab - ba`.
///
/// The commutator of two Hermitian matrices is anti-Hermitian, so
/// `i [a, b]` is Hermitian again; that combination is what the violation
/// criterion works with.
pub fn commutator<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

/// Max-entry norm of `[a, b]`, the compatibility residual of a pair.
pub fn commutator_residual<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    Ok(commutator(a, b)?.max_entry_norm())
}
