//! Shared fixtures for the integration suites: the standard CHSH quadruple
//! and seeded random generators for observables, quadruples and states.

#![allow(dead_code)]

use ncycle::{Complex64, HermitianObservable, Matrix64, Observable64, QuantumState, State64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> Matrix64 {
    Matrix64::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_z() -> Matrix64 {
    Matrix64::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn dichotomous(label: &str, m: Matrix64) -> Observable64 {
    HermitianObservable::dichotomous(label, m).unwrap()
}

/// The standard maximal-violation quadruple in cycle order.
pub fn chsh_quadruple() -> [Observable64; 4] {
    let i2 = Matrix64::identity(2);
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let b2 = (&pauli_z() + &pauli_x()).scale_real(inv);
    let b4 = (&pauli_z() - &pauli_x()).scale_real(inv);
    [
        dichotomous("X1", pauli_z().kron(&i2)),
        dichotomous("X2", i2.kron(&b2)),
        dichotomous("X3", pauli_x().kron(&i2)),
        dichotomous("X4", i2.kron(&b4)),
    ]
}

/// The pure state attaining the CHSH supremum: `(1, 1, 1, -1) / 2`.
pub fn chsh_witness() -> State64 {
    QuantumState::pure(&[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)]).unwrap()
}

pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> Matrix64 {
    let mut u = Matrix64::identity(dim);
    for _ in 0..3 {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm_sq: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if norm_sq < 1e-9 {
            continue;
        }
        let mut entries: Vec<Complex64> = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                let identity = if r == col { c(1.0, 0.0) } else { c(0.0, 0.0) };
                entries.push(identity - v[r] * v[col].conj() * c(2.0 / norm_sq, 0.0));
            }
        }
        let householder = Matrix64::new(dim, entries).unwrap();
        u = &u * &householder;
    }
    u
}

/// Diagonal of plus/minus ones guaranteed to carry both signs.
pub fn mixed_sign_diagonal<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    let mut diag: Vec<f64> = (0..dim)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    diag[0] = 1.0;
    diag[dim - 1] = -1.0;
    diag
}

/// Random dichotomous observable, optionally restricted to a given
/// eigenbasis.
pub fn random_dichotomous<R: Rng>(rng: &mut R, dim: usize, label: &str) -> Observable64 {
    let diag: Vec<f64> = (0..dim)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let u = random_unitary(rng, dim);
    conjugated(label, &u, &diag)
}

pub fn conjugated(label: &str, basis: &Matrix64, diag: &[f64]) -> Observable64 {
    let m = &(basis * &Matrix64::from_diagonal(diag)) * &basis.dagger();
    dichotomous(label, m.hermitian_part())
}

/// Pair of dichotomous observables on one factor space with a commutator of
/// norm at least `min_commutator` (pass 0.0 for a commuting pair drawn from
/// one eigenbasis).
pub fn random_local_pair<R: Rng>(
    rng: &mut R,
    dim: usize,
    min_commutator: f64,
    labels: (&str, &str),
) -> (Observable64, Observable64) {
    if min_commutator == 0.0 {
        let u = random_unitary(rng, dim);
        let first = conjugated(labels.0, &u, &mixed_sign_diagonal(rng, dim));
        let second = conjugated(labels.1, &u, &mixed_sign_diagonal(rng, dim));
        return (first, second);
    }
    loop {
        let first = conjugated(
            labels.0,
            &random_unitary(rng, dim),
            &mixed_sign_diagonal(rng, dim),
        );
        let second = conjugated(
            labels.1,
            &random_unitary(rng, dim),
            &mixed_sign_diagonal(rng, dim),
        );
        let residual = ncycle::commutator_residual(first.matrix(), second.matrix()).unwrap();
        if residual >= min_commutator {
            return (first, second);
        }
    }
}

/// Four mutually commuting dichotomous observables drawn from one random
/// eigenbasis.
pub fn random_commuting_quadruple<R: Rng>(rng: &mut R, dim: usize) -> [Observable64; 4] {
    let u = random_unitary(rng, dim);
    std::array::from_fn(|i| {
        let diag: Vec<f64> = (0..dim)
            .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
            .collect();
        conjugated(&format!("X{}", i + 1), &u, &diag)
    })
}

pub fn random_pure_state<R: Rng>(rng: &mut R, dim: usize) -> State64 {
    loop {
        let amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(state) = QuantumState::pure(&amplitudes) {
            return state;
        }
    }
}
