//! The bundled demo files: two scenarios and two correlation-data templates.

use ncycle::{Matrix64, QuantumState};
use serde_json::Value;

use crate::schema::{observable_entry, CorrelationEntry, CorrelationFile, ScenarioFile, StateBlock};
use crate::AppError;

pub const DEMO_NAMES: [&str; 4] = ["chsh", "commuting", "suppes-zanotti", "original-bell"];

fn pauli_x() -> Matrix64 {
    Matrix64::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("static matrix")
}

fn pauli_z() -> Matrix64 {
    Matrix64::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("static matrix")
}

/// The maximal-violation scenario: tensor construction from the local pairs
/// `(Z, X)` and `((Z+X)/sqrt2, (Z-X)/sqrt2)`, canonical signs, and the pure
/// witness state `(1, 1, 1, -1)/2` attaining the supremum.
fn chsh_demo() -> Result<Value, AppError> {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let z = ncycle::HermitianObservable::dichotomous("Z", pauli_z()).map_err(AppError::from_core)?;
    let x = ncycle::HermitianObservable::dichotomous("X", pauli_x()).map_err(AppError::from_core)?;
    let b2 = ncycle::HermitianObservable::dichotomous("W", (&pauli_z() + &pauli_x()).scale_real(inv))
        .map_err(AppError::from_core)?;
    let b4 = ncycle::HermitianObservable::dichotomous("V", (&pauli_z() - &pauli_x()).scale_real(inv))
        .map_err(AppError::from_core)?;
    let quad = ncycle::chsh_from_local_pairs((&z, &x), (&b2, &b4)).map_err(AppError::from_core)?;
    let witness = QuantumState::pure(&[
        ncycle::Complex64::new(0.5, 0.0),
        ncycle::Complex64::new(0.5, 0.0),
        ncycle::Complex64::new(0.5, 0.0),
        ncycle::Complex64::new(-0.5, 0.0),
    ])
    .map_err(AppError::from_core)?;
    let file = ScenarioFile {
        n: 4,
        observables: quad.iter().map(observable_entry).collect(),
        signs: Some(vec![1, 1, 1, -1]),
        state: Some(StateBlock {
            kind: "density".to_string(),
            entries: witness.matrix().entries().iter().map(|z| [z.re, z.im]).collect(),
        }),
    };
    serde_json::to_value(file).map_err(|e| AppError::internal(format!("serialize demo: {e}")))
}

/// Four mutually commuting diagonal observables with the maximally mixed
/// state; no sign pattern can be violated here.
fn commuting_demo() -> Result<Value, AppError> {
    let diagonals: [[f64; 4]; 4] = [
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
        [-1.0, -1.0, 1.0, 1.0],
    ];
    let observables: Vec<ncycle::Observable64> = diagonals
        .iter()
        .enumerate()
        .map(|(i, d)| {
            ncycle::HermitianObservable::dichotomous(
                format!("D{}", i + 1),
                Matrix64::from_diagonal(d),
            )
            .map_err(AppError::from_core)
        })
        .collect::<Result<_, _>>()?;
    let mixed = QuantumState::<f64>::maximally_mixed(4);
    let file = ScenarioFile {
        n: 4,
        observables: observables.iter().map(observable_entry).collect(),
        signs: Some(vec![1, 1, 1, -1]),
        state: Some(StateBlock {
            kind: "density".to_string(),
            entries: mixed.matrix().entries().iter().map(|z| [z.re, z.im]).collect(),
        }),
    };
    serde_json::to_value(file).map_err(|e| AppError::internal(format!("serialize demo: {e}")))
}

/// Correlation triple `(1, -1, 1)`: the textbook three-variable data with no
/// joint distribution.
fn suppes_zanotti_demo() -> Result<Value, AppError> {
    let file = CorrelationFile {
        kind: "correlations".to_string(),
        n: 3,
        averages: None,
        correlations: vec![
            CorrelationEntry { i: 1, j: 2, value: 1.0 },
            CorrelationEntry { i: 2, j: 3, value: -1.0 },
            CorrelationEntry { i: 1, j: 3, value: 1.0 },
        ],
    };
    serde_json::to_value(file).map_err(|e| AppError::internal(format!("serialize demo: {e}")))
}

/// Boundary data for the three-context check under perfect correlation.
fn original_bell_demo() -> Result<Value, AppError> {
    let file = CorrelationFile {
        kind: "correlations".to_string(),
        n: 4,
        averages: None,
        correlations: vec![
            CorrelationEntry { i: 1, j: 2, value: 1.0 },
            CorrelationEntry { i: 3, j: 4, value: 1.0 },
            CorrelationEntry { i: 1, j: 4, value: 1.0 },
            CorrelationEntry { i: 2, j: 3, value: 1.0 },
        ],
    };
    serde_json::to_value(file).map_err(|e| AppError::internal(format!("serialize demo: {e}")))
}

pub fn demo_file(name: &str) -> Result<Value, AppError> {
    match name {
        "chsh" => chsh_demo(),
        "commuting" => commuting_demo(),
        "suppes-zanotti" => suppes_zanotti_demo(),
        "original-bell" => original_bell_demo(),
        other => Err(AppError::usage(format!(
            "unknown demo {other:?}; available: {}",
            DEMO_NAMES.join(", ")
        ))),
    }
}
