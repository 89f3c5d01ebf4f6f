//! The 4-cycle (CHSH-type) analysis: the cycle expression as an operator,
//! the commutator-product criterion deciding whether any state can violate
//! the classical bound, optimal witness states, and the tensor-product
//! construction that realizes maximal violation from two incompatible local
//! pairs.
//!
//! For a cycle-compatible quadruple with an odd sign pattern the square of
//! the cycle operator satisfies the exact identity
//!
//! ```text
//! gamma^2 = 4 I + m13 m42,   m13 = i [X1, X3],   m42 = i [X4, X2]
//! ```
//!
//! (indices relabelled so the minus sign sits on the closing edge), so the
//! quantum supremum over states is `sqrt(4 + lambda_max(m13 m42))` and it
//! exceeds the classical bound 2 exactly when the product has a positive
//! eigenvalue. Both commutator observables are Hermitian and commute with
//! each other, which makes the product Hermitian as well.

use num_complex::Complex;

use crate::eigen::{hermitian_eigen, spectral_norm};
use crate::error::{Error, Result};
use crate::jpd::correlation;
use crate::matrix::{commutator, commutator_residual, ComplexMatrix};
use crate::observable::HermitianObservable;
use crate::scalar::Scalar;
use crate::scenario::{CycleScenario, SignPattern};
use crate::state::QuantumState;

/// The four cycle edges of a quadruple, 0-based.
const CYCLE_EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];

fn require_cycle_compatible<T: Scalar>(x: &[HermitianObservable<T>; 4]) -> Result<()> {
    for (a, b) in CYCLE_EDGES {
        if x[a].dim() != x[b].dim() {
            return Err(Error::DimensionMismatch {
                left: x[a].dim(),
                right: x[b].dim(),
            });
        }
        let residual = commutator_residual(x[a].matrix(), x[b].matrix())?;
        if residual > T::COMPATIBILITY_TOL {
            return Err(Error::IncompatiblePair {
                i: a + 1,
                j: b + 1,
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

/// The cycle expression as an operator:
/// `g1 X1 X2 + g2 X2 X3 + g3 X3 X4 + g4 X4 X1`.
///
/// Each term is a product of commuting Hermitian operators, so the sum is
/// Hermitian up to the compatibility residuals.
pub fn chsh_operator<T: Scalar>(
    x: &[HermitianObservable<T>; 4],
    signs: &SignPattern,
) -> Result<ComplexMatrix<T>> {
    signs.require_len(4)?;
    require_cycle_compatible(x)?;
    let mut gamma = ComplexMatrix::<T>::zeros(x[0].dim());
    for (k, (a, b)) in CYCLE_EDGES.into_iter().enumerate() {
        let term = x[a].matrix() * x[b].matrix();
        let sign = if signs.get(k) > 0 { T::one() } else { -T::one() };
        gamma = &gamma + &term.scale_real(sign);
    }
    Ok(gamma)
}

/// The pair of commutator observables of a cycle-compatible quadruple and
/// their operator product, named by their formulas:
/// `m13 = i [X1, X3]` and `m42 = i [X4, X2]`.
#[derive(Debug, Clone)]
pub struct CommutatorProduct<T> {
    /// `i [X1, X3]`, Hermitian.
    pub m13: ComplexMatrix<T>,
    /// `i [X4, X2]`, Hermitian.
    pub m42: ComplexMatrix<T>,
    /// `m13 m42`; Hermitian because the factors commute.
    pub product: ComplexMatrix<T>,
}

/// Computes the commutator observables across the two cycle diagonals.
pub fn commutator_product<T: Scalar>(
    x: &[HermitianObservable<T>; 4],
) -> Result<CommutatorProduct<T>> {
    require_cycle_compatible(x)?;
    let i_unit = Complex::new(T::zero(), T::one());
    let m13 = commutator(x[0].matrix(), x[2].matrix())?.scale(i_unit);
    let m42 = commutator(x[3].matrix(), x[1].matrix())?.scale(i_unit);
    let product = &m13 * &m42;
    Ok(CommutatorProduct { m13, m42, product })
}

/// Verdict of the commutator-product criterion for one quadruple and one odd
/// sign pattern.
#[derive(Debug, Clone)]
pub struct ViolationAnalysis<T> {
    /// Spectral norm of `m13 m42`.
    pub product_norm: T,
    /// Whether the product is nonzero beyond the condition tolerance.
    pub condition_holds: bool,
    /// `sup |<psi| gamma |psi>|` over unit vectors; the quantum maximum of
    /// the cycle expression.
    pub supremum: T,
    /// Pure state realizing the supremum in modulus.
    pub witness_state: QuantumState<T>,
    /// Whether the supremum exceeds the classical bound 2.
    pub violation_possible: bool,
}

/// Decides whether the 4-cycle inequality with the given odd sign pattern
/// can be violated by any quantum state.
///
/// Sign patterns with three minus signs are negated and patterns whose minus
/// sits away from the closing edge are rotated, so the analysis always runs
/// in the canonical `(+, +, +, -)` form; neither move changes the supremum
/// or the witness. Even patterns are rejected: the identity behind the
/// criterion does not cover them.
pub fn violation_analysis<T: Scalar>(
    x: &[HermitianObservable<T>; 4],
    signs: &SignPattern,
) -> Result<ViolationAnalysis<T>> {
    signs.require_len(4)?;
    if !signs.has_odd_minus_count() {
        return Err(Error::UnsupportedSignPattern {
            minus_count: signs.minus_count(),
        });
    }
    for obs in x {
        if !obs.is_dichotomous() {
            return Err(Error::NotDichotomous {
                label: obs.label().to_string(),
                deviation: f64::NAN,
                tolerance: T::DICHOTOMY_TOL.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    require_cycle_compatible(x)?;

    // Reduce to the canonical pattern: flip three minuses to one, then
    // rotate the quadruple so the minus lands on the closing edge.
    let reduced = if signs.minus_count() == 3 {
        signs.negated()
    } else {
        signs.clone()
    };
    let minus_edge = (0..4)
        .find(|&k| reduced.get(k) < 0)
        .expect("odd pattern has a minus");
    let rotation = (minus_edge + 1) % 4;
    let rotated: [HermitianObservable<T>; 4] =
        std::array::from_fn(|i| x[(i + rotation) % 4].clone());

    let parts = commutator_product(&rotated)?;
    // The product is Hermitian up to the compatibility residuals; take the
    // Hermitian part before asking for its spectrum.
    let product_norm = spectral_norm(&parts.product.hermitian_part())?;

    let gamma = chsh_operator(&rotated, &SignPattern::canonical_chsh())?;
    let (values, vectors) = hermitian_eigen(&gamma.hermitian_part())?;
    let dim = gamma.dim();

    let top = values.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    // Among eigenvalues tied in modulus, prefer the largest signed one so
    // the witness maximizes the signed cycle expression; eigenvalues are
    // ascending, so that is the last tied column.
    let tie = T::from_f64(1e-9).unwrap() * (T::one() + top);
    let chosen = (0..values.len())
        .filter(|&i| top - values[i].abs() <= tie)
        .max_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"))
        .expect("at least one eigenvalue");
    let witness_vector: Vec<Complex<T>> = (0..dim).map(|r| vectors.entry(r, chosen)).collect();
    let witness_state = QuantumState::pure(&witness_vector)?;

    let supremum = top;
    let two = T::one() + T::one();
    Ok(ViolationAnalysis {
        product_norm,
        condition_holds: product_norm > T::CONDITION_TOL,
        supremum,
        witness_state,
        violation_possible: supremum > two + T::CONDITION_TOL,
    })
}

/// Builds the 4-cycle quadruple carried by a tensor-product space:
/// `X1 = B1 (x) I`, `X3 = B3 (x) I` from the left pair and
/// `X2 = I (x) B2`, `X4 = I (x) B4` from the right pair, so consecutive
/// cycle observables live on different factors and commute exactly. The
/// criterion then holds precisely when both local pairs are incompatible.
pub fn chsh_from_local_pairs<T: Scalar>(
    left: (&HermitianObservable<T>, &HermitianObservable<T>),
    right: (&HermitianObservable<T>, &HermitianObservable<T>),
) -> Result<[HermitianObservable<T>; 4]> {
    for obs in [left.0, left.1, right.0, right.1] {
        if !obs.is_dichotomous() {
            return Err(Error::NotDichotomous {
                label: obs.label().to_string(),
                deviation: f64::NAN,
                tolerance: T::DICHOTOMY_TOL.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    if left.0.dim() != left.1.dim() {
        return Err(Error::DimensionMismatch {
            left: left.0.dim(),
            right: left.1.dim(),
        });
    }
    if right.0.dim() != right.1.dim() {
        return Err(Error::DimensionMismatch {
            left: right.0.dim(),
            right: right.1.dim(),
        });
    }
    let left_identity = ComplexMatrix::<T>::identity(left.0.dim());
    let right_identity = ComplexMatrix::<T>::identity(right.0.dim());
    let build = |label: String, m: ComplexMatrix<T>| HermitianObservable::dichotomous(label, m);
    Ok([
        build(format!("{}⊗I", left.0.label()), left.0.matrix().kron(&right_identity))?,
        build(format!("I⊗{}", right.0.label()), left_identity.kron(right.0.matrix()))?,
        build(format!("{}⊗I", left.1.label()), left.1.matrix().kron(&right_identity))?,
        build(format!("I⊗{}", right.1.label()), left_identity.kron(right.1.matrix()))?,
    ])
}

/// The cycle expression `sum_k g_k <X_k X_{k+1}>` evaluated exactly on a
/// state. For `n = 4` this equals `Tr(rho gamma)`.
pub fn quantum_value<T: Scalar>(
    scenario: &CycleScenario<T>,
    signs: &SignPattern,
    state: &QuantumState<T>,
) -> Result<T> {
    let n = scenario.n();
    signs.require_len(n)?;
    if scenario.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: scenario.dim(),
            right: state.dim(),
        });
    }
    scenario.require_compatible()?;
    let mut value = T::zero();
    for k in 0..n {
        let (a, b) = scenario.edge(k);
        let c = correlation(state, scenario.observable(a), scenario.observable(b))?;
        value += if signs.get(k) > 0 { c } else { -c };
    }
    Ok(value)
}
