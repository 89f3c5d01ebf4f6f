//! Hermitian eigendecomposition via cyclic complex Jacobi rotations, plus
//! the spectral quantities built on top of it: spectral norm and the
//! decomposition into eigenvalue/projector pairs.
//!
//! Jacobi is chosen over tridiagonalization because the matrices here are
//! tiny (tensor products of a few qubits) and Jacobi delivers eigenvectors
//! orthonormal to machine precision, which the projector invariants rely on.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::observable::HermitianObservable;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and a unitary whose columns are the matching
/// eigenvectors. Input must satisfy the Hermiticity tolerance.
///
/// Eigenvector phases are canonicalized (largest-modulus entry real and
/// nonnegative) so repeated runs produce identical output.
pub(crate) fn hermitian_eigen<T: Scalar>(
    a: &ComplexMatrix<T>,
) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    a.require_hermitian()?;
    let n = a.dim();
    // Work on the exactly-Hermitian part; the deviation is below tolerance.
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);

    if n == 1 {
        return Ok((vec![m.entry(0, 0).re], v));
    }

    let scale = m.frobenius_norm().max(T::min_positive_value());
    let target = T::epsilon() * scale * T::from_usize(n).unwrap();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(Error::EigensolverFailure { dim: n });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| m.entry(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::<T>::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut col: Vec<Complex<T>> = (0..n).map(|r| v.entry(r, old_col)).collect();
        canonicalize_phase(&mut col);
        for (r, &x) in col.iter().enumerate() {
            vectors.set(r, new_col, x);
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm<T: Scalar>(m: &ComplexMatrix<T>) -> T {
    let n = m.dim();
    let mut sum = T::zero();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += m.entry(p, q).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
fn rotate<T: Scalar>(m: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = m.entry(p, q);
    let beta = apq.norm();
    if beta == T::zero() {
        return;
    }
    let app = m.entry(p, p).re;
    let aqq = m.entry(q, q).re;
    // Skip entries already negligible against the local diagonal.
    if beta <= T::epsilon() * (app.abs() + aqq.abs()) * T::from_f64(1e-3).unwrap() {
        let zero = Complex::new(T::zero(), T::zero());
        m.set(p, q, zero);
        m.set(q, p, zero);
        return;
    }

    let phase = apq / Complex::new(beta, T::zero());
    let tau = (aqq - app) / ((T::one() + T::one()) * beta);
    let t = if tau.abs() > T::one() / T::epsilon() {
        // Degenerate slope: first-order root of t^2 + 2 tau t - 1 = 0.
        (T::one() / (T::one() + T::one())) / tau
    } else if tau >= T::zero() {
        T::one() / (tau + (tau * tau + T::one()).sqrt())
    } else {
        -T::one() / (-tau + (tau * tau + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let n = m.dim();
    let cs = Complex::new(c, T::zero());
    let s_phase = phase * Complex::new(s, T::zero());

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let mkp = m.entry(k, p);
        let mkq = m.entry(k, q);
        let new_kp = mkp * cs - mkq * s_phase.conj();
        let new_kq = mkp * s_phase + mkq * cs;
        m.set(k, p, new_kp);
        m.set(k, q, new_kq);
        m.set(p, k, new_kp.conj());
        m.set(q, k, new_kq.conj());
    }
    let shift = t * beta;
    let zero = Complex::new(T::zero(), T::zero());
    m.set(p, p, Complex::new(app - shift, T::zero()));
    m.set(q, q, Complex::new(aqq + shift, T::zero()));
    m.set(p, q, zero);
    m.set(q, p, zero);

    for k in 0..n {
        let vkp = v.entry(k, p);
        let vkq = v.entry(k, q);
        v.set(k, p, vkp * cs - vkq * s_phase.conj());
        v.set(k, q, vkp * s_phase + vkq * cs);
    }
}

fn canonicalize_phase<T: Scalar>(col: &mut [Complex<T>]) {
    let mut pivot = 0;
    let mut best = T::zero();
    for (k, x) in col.iter().enumerate() {
        let mag = x.norm();
        if mag > best + T::epsilon() {
            best = mag;
            pivot = k;
        }
    }
    if best == T::zero() {
        return;
    }
    let unit = col[pivot] / Complex::new(best, T::zero());
    let correction = unit.conj();
    for x in col.iter_mut() {
        *x *= correction;
    }
}

/// Largest eigenvalue modulus of a Hermitian matrix; equals the supremum of
/// `|<psi| a |psi>|` over unit vectors.
pub fn spectral_norm<T: Scalar>(a: &ComplexMatrix<T>) -> Result<T> {
    let (values, _) = hermitian_eigen(a)?;
    Ok(values.iter().map(|v| v.abs()).fold(T::zero(), T::max))
}

/// Resolution of a Hermitian matrix into eigenvalue/projector pairs with
/// eigenvalues strictly increasing; eigenvalues within the degeneracy
/// tolerance are merged into a single projector.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T> {
    pairs: Vec<(T, ComplexMatrix<T>)>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    /// Decomposes a raw Hermitian matrix.
    pub fn compute(a: &ComplexMatrix<T>) -> Result<Self> {
        let n = a.dim();
        let (values, vectors) = hermitian_eigen(a)?;

        let mut pairs: Vec<(T, ComplexMatrix<T>)> = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && values[end] - values[end - 1] <= T::DEGENERACY_TOL {
                end += 1;
            }
            let mut projector = ComplexMatrix::<T>::zeros(n);
            let mut value_sum = T::zero();
            for col in start..end {
                value_sum += values[col];
                for r in 0..n {
                    let vr = vectors.entry(r, col);
                    for c in 0..n {
                        let add = vr * vectors.entry(c, col).conj();
                        projector.set(r, c, projector.entry(r, c) + add);
                    }
                }
            }
            let count = T::from_usize(end - start).unwrap();
            pairs.push((value_sum / count, projector));
            start = end;
        }
        Ok(Self { pairs })
    }

    /// Eigenvalue/projector pairs, eigenvalues ascending.
    pub fn pairs(&self) -> &[(T, ComplexMatrix<T>)] {
        &self.pairs
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = T> + '_ {
        self.pairs.iter().map(|(v, _)| *v)
    }

    /// Rebuilds the original matrix as the eigenvalue-weighted projector sum.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let dim = self.pairs[0].1.dim();
        let mut out = ComplexMatrix::<T>::zeros(dim);
        for (value, projector) in &self.pairs {
            out = &out + &projector.scale_real(*value);
        }
        out
    }

    /// Projector onto the eigenspace whose eigenvalue has the given sign;
    /// the zero matrix when that branch is absent. Meaningful for
    /// dichotomous observables, whose eigenvalues sit near plus/minus one.
    pub fn sign_projector(&self, sign: i8) -> ComplexMatrix<T> {
        let dim = self.pairs[0].1.dim();
        for (value, projector) in &self.pairs {
            if (sign > 0) == (*value > T::zero()) {
                return projector.clone();
            }
        }
        ComplexMatrix::zeros(dim)
    }
}

/// Spectral decomposition of an already-validated observable.
pub fn spectral_decomposition<T: Scalar>(
    observable: &HermitianObservable<T>,
) -> Result<SpectralDecomposition<T>> {
    SpectralDecomposition::compute(observable.matrix())
}
