//! Shared fixtures for unit tests: Pauli matrices, the standard CHSH
//! quadruple and small random-matrix generators. Compiled only for tests.

use num_complex::Complex;
use rand::Rng;

use crate::matrix::ComplexMatrix;
use crate::observable::HermitianObservable;

pub fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn pauli_x() -> ComplexMatrix<f64> {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix<f64> {
    ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix<f64> {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn dichotomous(label: &str, m: ComplexMatrix<f64>) -> HermitianObservable<f64> {
    HermitianObservable::dichotomous(label, m).unwrap()
}

/// The four observables realizing the maximal CHSH violation:
/// `X1 = Z (x) I`, `X2 = I (x) (Z+X)/sqrt2`, `X3 = X (x) I`,
/// `X4 = I (x) (Z-X)/sqrt2`, in cycle order.
pub fn chsh_quadruple() -> [HermitianObservable<f64>; 4] {
    let i2 = ComplexMatrix::identity(2);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let b2 = (&pauli_z() + &pauli_x()).scale_real(inv_sqrt2);
    let b4 = (&pauli_z() - &pauli_x()).scale_real(inv_sqrt2);
    [
        dichotomous("X1", pauli_z().kron(&i2)),
        dichotomous("X2", i2.kron(&b2)),
        dichotomous("X3", pauli_x().kron(&i2)),
        dichotomous("X4", i2.kron(&b4)),
    ]
}

/// Singlet state amplitudes `(|01> - |10>)/sqrt2`.
pub fn singlet() -> Vec<Complex<f64>> {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    vec![c(0.0, 0.0), c(a, 0.0), c(-a, 0.0), c(0.0, 0.0)]
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix<f64> {
    let entries: Vec<Complex<f64>> = (0..dim * dim)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_parts(dim, entries).hermitian_part()
}

/// Random unitary as a product of Householder reflections.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix<f64> {
    let mut u = ComplexMatrix::identity(dim);
    for _ in 0..3 {
        let v: Vec<Complex<f64>> = (0..dim)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm_sq: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if norm_sq < 1e-9 {
            continue;
        }
        let mut reflection = ComplexMatrix::identity(dim);
        for r in 0..dim {
            for col in 0..dim {
                let delta = v[r] * v[col].conj() * c(2.0 / norm_sq, 0.0);
                reflection.set(r, col, reflection.entry(r, col) - delta);
            }
        }
        u = &u * &reflection;
    }
    u
}

/// Random dichotomous observable: a random plus/minus-one diagonal
/// conjugated by a random unitary.
pub fn random_dichotomous<R: Rng>(rng: &mut R, dim: usize, label: &str) -> HermitianObservable<f64> {
    let diag: Vec<f64> = (0..dim)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let u = random_unitary(rng, dim);
    let m = &(&u * &ComplexMatrix::from_diagonal(&diag)) * &u.dagger();
    HermitianObservable::dichotomous(label, m.hermitian_part()).expect("conjugated diagonal stays dichotomous")
}
