//! The noncontextual (classical) side: exhaustive cycle-inequality bounds
//! over deterministic assignments, joint-distribution feasibility for given
//! correlation data, and the two three-context checks (Suppes-Zanotti and
//! the original Bell inequality under perfect correlation).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::jpd::CorrelationData;
use crate::scalar::Scalar;
use crate::scenario::SignPattern;
use crate::simplex::{phase_one, PhaseOneOutcome};

/// Cap on the cycle length for exhaustive `2^n` bound enumeration.
pub const MAX_ENUMERATION: usize = 24;
/// Cap on the variable count for the feasibility solver's `2^n` atoms.
pub const MAX_FEASIBILITY: usize = 16;

/// A classical bound together with a deterministic assignment attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    /// Maximum of the signed correlation sum over all assignments.
    pub bound: i64,
    /// First maximizer in enumeration order, entries in `{-1, +1}`.
    pub assignment: Vec<i8>,
}

/// Value of the cycle expression at a deterministic assignment, in exact
/// integer arithmetic.
pub fn cycle_value(assignment: &[i8], signs: &SignPattern) -> i64 {
    let n = assignment.len();
    let mut total = 0i64;
    for k in 0..n {
        let term = i64::from(assignment[k]) * i64::from(assignment[(k + 1) % n]);
        total += i64::from(signs.get(k)) * term;
    }
    total
}

fn assignment_from_bits(bits: u64, n: usize) -> Vec<i8> {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 })
        .collect()
}

/// Maximum of `sum_k g_k a_k a_{k+1}` over all `2^n` assignments
/// `a in {-1,+1}^n`, computed exhaustively in integer arithmetic.
pub fn noncontextual_bound(n: usize, signs: &SignPattern) -> Result<BoundResult> {
    if n < 3 {
        return Err(Error::TooFewObservables { found: n, min: 3 });
    }
    if n > MAX_ENUMERATION {
        return Err(Error::TooManyVariables {
            n,
            max: MAX_ENUMERATION,
        });
    }
    signs.require_len(n)?;

    let mut best = i64::MIN;
    let mut best_assignment = Vec::new();
    for bits in 0..1u64 << n {
        let assignment = assignment_from_bits(bits, n);
        let value = cycle_value(&assignment, signs);
        if value > best {
            best = value;
            best_assignment = assignment;
        }
    }
    Ok(BoundResult {
        bound: best,
        assignment: best_assignment,
    })
}

/// Which equality constraint a certificate multiplier belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Normalization,
    Average(usize),
    Correlation(usize, usize),
}

impl std::fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstraintKind::Normalization => write!(f, "1"),
            ConstraintKind::Average(i) => write!(f, "<X{i}>"),
            ConstraintKind::Correlation(i, j) => write!(f, "<X{i}X{j}>"),
        }
    }
}

/// A linear combination of the supplied data that no distribution over
/// deterministic assignments can reach.
#[derive(Debug, Clone)]
pub struct InfeasibilityCertificate<T> {
    /// Nonzero multipliers on the data constraints (normalization excluded).
    pub terms: Vec<(ConstraintKind, T)>,
    /// The combination evaluated on the supplied data.
    pub combination: T,
    /// Its maximum over all deterministic assignments.
    pub max_attainable: T,
    /// Human-readable violated inequality.
    pub description: String,
}

/// Outcome of the joint-distribution existence test.
#[derive(Debug, Clone)]
pub struct FeasibilityResult<T> {
    pub feasible: bool,
    /// Probabilities over deterministic assignments reproducing the data;
    /// present iff feasible, only nonzero atoms listed.
    pub witness: Option<BTreeMap<Vec<i8>, T>>,
    /// Present iff infeasible.
    pub certificate: Option<InfeasibilityCertificate<T>>,
}

/// Decides whether some probability distribution over the `2^n`
/// deterministic assignments reproduces every supplied average and pairwise
/// correlation. Missing entries are unconstrained.
pub fn jpd_exists<T: Scalar>(n: usize, data: &CorrelationData<T>) -> Result<FeasibilityResult<T>> {
    if n == 0 {
        return Err(Error::InvalidCorrelationData {
            reason: "zero variables".into(),
        });
    }
    if n > MAX_FEASIBILITY {
        return Err(Error::TooManyVariables {
            n,
            max: MAX_FEASIBILITY,
        });
    }
    if data.n() != n {
        return Err(Error::InvalidCorrelationData {
            reason: format!("data holds {} variables, expected {n}", data.n()),
        });
    }
    for (&(i, j), &value) in data.correlations() {
        if j > n {
            return Err(Error::InvalidCorrelationData {
                reason: format!("correlation ({i},{j}) outside 1..={n}"),
            });
        }
        if value.abs() > T::one() + T::RANGE_TOL {
            return Err(Error::CorrelationOutOfRange {
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let atoms = 1usize << n;
    let assignments: Vec<Vec<i8>> = (0..atoms as u64)
        .map(|bits| assignment_from_bits(bits, n))
        .collect();

    let mut kinds = vec![ConstraintKind::Normalization];
    let mut rows: Vec<Vec<T>> = vec![vec![T::one(); atoms]];
    let mut rhs: Vec<T> = vec![T::one()];
    for i in 1..=n {
        if let Some(avg) = data.average(i) {
            if avg.abs() > T::one() + T::RANGE_TOL {
                return Err(Error::CorrelationOutOfRange {
                    value: avg.to_f64().unwrap_or(f64::NAN),
                });
            }
            kinds.push(ConstraintKind::Average(i));
            rows.push(
                assignments
                    .iter()
                    .map(|a| T::from_i8(a[i - 1]).unwrap())
                    .collect(),
            );
            rhs.push(avg);
        }
    }
    for (&(i, j), &value) in data.correlations() {
        kinds.push(ConstraintKind::Correlation(i, j));
        rows.push(
            assignments
                .iter()
                .map(|a| T::from_i8(a[i - 1] * a[j - 1]).unwrap())
                .collect(),
        );
        rhs.push(value);
    }

    match phase_one(&rows, &rhs, T::FEASIBILITY_TOL)? {
        PhaseOneOutcome::Feasible { solution } => {
            let mut witness = BTreeMap::new();
            for (col, p) in solution {
                witness.insert(assignments[col].clone(), p);
            }
            Ok(FeasibilityResult {
                feasible: true,
                witness: Some(witness),
                certificate: None,
            })
        }
        PhaseOneOutcome::Infeasible { multipliers } => {
            let certificate = build_certificate(&kinds, &rows, &rhs, &multipliers);
            Ok(FeasibilityResult {
                feasible: false,
                witness: None,
                certificate: Some(certificate),
            })
        }
    }
}

fn build_certificate<T: Scalar>(
    kinds: &[ConstraintKind],
    rows: &[Vec<T>],
    rhs: &[T],
    multipliers: &[T],
) -> InfeasibilityCertificate<T> {
    // Rescale so the largest data multiplier has modulus one; the
    // normalization row only shifts both sides and is folded into the
    // attainable maximum.
    let scale = kinds
        .iter()
        .zip(multipliers)
        .filter(|(k, _)| !matches!(k, ConstraintKind::Normalization))
        .map(|(_, &y)| y.abs())
        .fold(T::zero(), T::max);
    let scale = if scale > T::zero() { scale } else { T::one() };

    let atoms = rows[0].len();
    let mut max_attainable = T::neg_infinity();
    for col in 0..atoms {
        let mut value = T::zero();
        for (r, kind) in kinds.iter().enumerate() {
            if matches!(kind, ConstraintKind::Normalization) {
                continue;
            }
            value += multipliers[r] / scale * rows[r][col];
        }
        max_attainable = max_attainable.max(value);
    }

    let mut combination = T::zero();
    let mut terms = Vec::new();
    let mut description = String::new();
    for (r, kind) in kinds.iter().enumerate() {
        if matches!(kind, ConstraintKind::Normalization) {
            continue;
        }
        let y = multipliers[r] / scale;
        if y.abs() <= T::FEASIBILITY_TOL {
            continue;
        }
        combination += y * rhs[r];
        if !description.is_empty() {
            description.push_str(if y >= T::zero() { " + " } else { " - " });
        } else if y < T::zero() {
            description.push('-');
        }
        let _ = write!(description, "{:.4}*{}", y.abs().to_f64().unwrap_or(f64::NAN), kind);
        terms.push((*kind, y));
    }
    let _ = write!(
        description,
        " = {:.6} exceeds the deterministic-assignment maximum {:.6}",
        combination.to_f64().unwrap_or(f64::NAN),
        max_attainable.to_f64().unwrap_or(f64::NAN)
    );
    InfeasibilityCertificate {
        terms,
        combination,
        max_attainable,
        description,
    }
}

/// One sign orientation of the three-variable cycle inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientationCheck<T> {
    /// Signs applied to `(c12, c23, c13)`; always an odd number of minuses.
    pub signs: [i8; 3],
    pub lhs: T,
    pub satisfied: bool,
}

/// Result of the three-variable inequality check.
#[derive(Debug, Clone, PartialEq)]
pub struct SuppesZanottiReport<T> {
    /// Left-hand side of the canonical orientation `c12 - c23 + c13`.
    pub lhs: T,
    /// Whether the canonical orientation holds (`lhs <= 1`).
    pub satisfied: bool,
    /// All four odd orientations; together they are the full existence
    /// criterion for a joint distribution of three dichotomous variables
    /// with unconstrained averages.
    pub orientations: Vec<OrientationCheck<T>>,
    pub all_satisfied: bool,
}

/// Evaluates `c12 - c23 + c13 <= 1` and its odd sign orientations.
pub fn suppes_zanotti_check<T: Scalar>(c12: T, c23: T, c13: T) -> Result<SuppesZanottiReport<T>> {
    for value in [c12, c23, c13] {
        if value.abs() > T::one() + T::RANGE_TOL {
            return Err(Error::CorrelationOutOfRange {
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let orientations_signs: [[i8; 3]; 4] = [[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]];
    let mut orientations = Vec::with_capacity(4);
    for signs in orientations_signs {
        let lhs = apply_sign(c12, signs[0]) + apply_sign(c23, signs[1]) + apply_sign(c13, signs[2]);
        orientations.push(OrientationCheck {
            signs,
            lhs,
            satisfied: lhs <= T::one() + T::RANGE_TOL,
        });
    }
    let all_satisfied = orientations.iter().all(|o| o.satisfied);
    Ok(SuppesZanottiReport {
        lhs: orientations[0].lhs,
        satisfied: orientations[0].satisfied,
        orientations,
        all_satisfied,
    })
}

fn apply_sign<T: Scalar>(value: T, sign: i8) -> T {
    if sign > 0 {
        value
    } else {
        -value
    }
}

/// Result of the three-context four-observable inequality check.
///
/// The inequality `c12 - c34 + c14 <= 1` is only asserted under the perfect
/// correlation `c23 = 1`; when the precondition fails no verdict is issued.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginalBellReport<T> {
    pub precondition_met: bool,
    pub c23: T,
    pub lhs: Option<T>,
    pub satisfied: Option<bool>,
}

/// Checks the three-context inequality with the default perfect-correlation
/// tolerance.
pub fn original_bell_check<T: Scalar>(c12: T, c34: T, c14: T, c23: T) -> Result<OriginalBellReport<T>> {
    original_bell_check_with(c12, c34, c14, c23, T::PERFECT_CORRELATION_TOL)
}

/// Same as [`original_bell_check`] with an explicit precision tolerance on
/// the `c23 = 1` precondition.
pub fn original_bell_check_with<T: Scalar>(
    c12: T,
    c34: T,
    c14: T,
    c23: T,
    tolerance: T,
) -> Result<OriginalBellReport<T>> {
    for value in [c12, c34, c14, c23] {
        if value.abs() > T::one() + T::RANGE_TOL {
            return Err(Error::CorrelationOutOfRange {
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    if (c23 - T::one()).abs() > tolerance {
        return Ok(OriginalBellReport {
            precondition_met: false,
            c23,
            lhs: None,
            satisfied: None,
        });
    }
    let lhs = c12 - c34 + c14;
    Ok(OriginalBellReport {
        precondition_met: true,
        c23,
        lhs: Some(lhs),
        satisfied: Some(lhs <= T::one() + T::RANGE_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn signs(values: &[i8]) -> SignPattern {
        SignPattern::new(values.to_vec()).unwrap()
    }

    #[test]
    fn chsh_bound_is_two() {
        let result = noncontextual_bound(4, &SignPattern::canonical_chsh()).unwrap();
        assert_eq!(result.bound, 2);
        assert_eq!(
            cycle_value(&result.assignment, &SignPattern::canonical_chsh()),
            2
        );
    }

    #[test]
    fn all_plus_bound_is_n() {
        let result = noncontextual_bound(4, &SignPattern::all_plus(4)).unwrap();
        assert_eq!(result.bound, 4);
        assert_eq!(result.assignment, vec![1, 1, 1, 1]);
    }

    #[test]
    fn three_cycle_odd_bound_is_one() {
        let result = noncontextual_bound(3, &signs(&[1, -1, 1])).unwrap();
        assert_eq!(result.bound, 1);
    }

    #[test]
    fn enumeration_caps() {
        assert!(matches!(
            noncontextual_bound(2, &SignPattern::all_plus(2)),
            Err(Error::TooFewObservables { .. })
        ));
        assert!(matches!(
            noncontextual_bound(25, &SignPattern::all_plus(25)),
            Err(Error::TooManyVariables { .. })
        ));
    }

    #[test]
    fn bound_matches_independent_reverse_enumeration() {
        // Second oracle: walk assignments in the opposite order and keep a
        // running maximum computed with a differently grouped sum.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for n in 3..=8usize {
            for _ in 0..20 {
                let pattern: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                let signs = SignPattern::new(pattern).unwrap();
                let fast = noncontextual_bound(n, &signs).unwrap();
                let mut oracle = i64::MIN;
                for bits in (0..1u64 << n).rev() {
                    let a: Vec<i8> = (0..n)
                        .map(|i| if bits >> i & 1 == 1 { 1i8 } else { -1 })
                        .collect();
                    let mut v = 0i64;
                    for k in (0..n).rev() {
                        v += i64::from(signs.get(k)) * i64::from(a[k]) * i64::from(a[(k + 1) % n]);
                    }
                    oracle = oracle.max(v);
                }
                assert_eq!(fast.bound, oracle, "n={n} signs={:?}", signs.as_slice());
            }
        }
    }

    #[test]
    fn contradictory_three_cycle_is_infeasible() {
        let mut data = CorrelationData::<f64>::new(3);
        data.set_correlation(1, 2, 1.0).unwrap();
        data.set_correlation(2, 3, -1.0).unwrap();
        data.set_correlation(1, 3, 1.0).unwrap();
        let result = jpd_exists(3, &data).unwrap();
        assert!(!result.feasible);
        let certificate = result.certificate.unwrap();
        assert!(certificate.combination > certificate.max_attainable);
        assert!(!certificate.description.is_empty());
    }

    #[test]
    fn perfectly_correlated_three_cycle_is_feasible() {
        let mut data = CorrelationData::<f64>::new(3);
        data.set_correlation(1, 2, 1.0).unwrap();
        data.set_correlation(2, 3, 1.0).unwrap();
        data.set_correlation(1, 3, 1.0).unwrap();
        let result = jpd_exists(3, &data).unwrap();
        assert!(result.feasible);
        let witness = result.witness.unwrap();
        // The witness reproduces the constraints.
        let total: f64 = witness.values().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        for (&(i, j), &c) in data.correlations() {
            let got: f64 = witness
                .iter()
                .map(|(a, p)| f64::from(a[i - 1] * a[j - 1]) * p)
                .sum();
            assert_abs_diff_eq!(got, c, epsilon = 1e-7);
        }
    }

    #[test]
    fn averages_constrain_the_witness() {
        let mut data = CorrelationData::<f64>::new(3);
        data.set_average(1, 0.5).unwrap();
        data.set_correlation(1, 2, 1.0).unwrap();
        let result = jpd_exists(3, &data).unwrap();
        assert!(result.feasible);
        let witness = result.witness.unwrap();
        let avg: f64 = witness.iter().map(|(a, p)| f64::from(a[0]) * p).sum();
        assert_abs_diff_eq!(avg, 0.5, epsilon = 1e-7);
        let c: f64 = witness.iter().map(|(a, p)| f64::from(a[0] * a[1]) * p).sum();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-7);
    }

    #[test]
    fn out_of_range_data_is_rejected() {
        let mut data = CorrelationData::<f64>::new(3);
        assert!(matches!(
            data.set_correlation(1, 2, 1.5),
            Err(Error::CorrelationOutOfRange { .. })
        ));
    }

    #[test]
    fn suppes_zanotti_on_contradictory_triple() {
        let report = suppes_zanotti_check(1.0, -1.0, 1.0).unwrap();
        assert_abs_diff_eq!(report.lhs, 3.0, epsilon = 1e-12);
        assert!(!report.satisfied);
        assert!(!report.all_satisfied);
    }

    #[test]
    fn suppes_zanotti_boundary_and_zero() {
        let report = suppes_zanotti_check(1.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(report.lhs, 1.0, epsilon = 1e-12);
        assert!(report.satisfied);
        assert!(report.all_satisfied);

        let zero = suppes_zanotti_check(0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(zero.lhs, 0.0, epsilon = 1e-12);
        assert!(zero.satisfied);
        assert!(zero.all_satisfied);
    }

    #[test]
    fn suppes_zanotti_agrees_with_feasibility_smoke() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let c12 = rng.gen_range(-1.0..1.0);
            let c23 = rng.gen_range(-1.0..1.0);
            let c13 = rng.gen_range(-1.0..1.0);
            let report = suppes_zanotti_check(c12, c23, c13).unwrap();
            let mut data = CorrelationData::<f64>::new(3);
            data.set_correlation(1, 2, c12).unwrap();
            data.set_correlation(2, 3, c23).unwrap();
            data.set_correlation(1, 3, c13).unwrap();
            let feasible = jpd_exists(3, &data).unwrap().feasible;
            assert_eq!(report.all_satisfied, feasible, "at ({c12},{c23},{c13})");
        }
    }

    #[test]
    fn original_bell_boundary_case() {
        let report = original_bell_check(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(report.precondition_met);
        assert_abs_diff_eq!(report.lhs.unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(report.satisfied, Some(true));
    }

    #[test]
    fn original_bell_precondition_unmet() {
        let report = original_bell_check(1.0, 1.0, 1.0, 0.5).unwrap();
        assert!(!report.precondition_met);
        assert!(report.lhs.is_none());
        assert!(report.satisfied.is_none());
    }

    #[test]
    fn original_bell_zero_case() {
        let report = original_bell_check(0.0, 0.0, 0.0, 1.0).unwrap();
        assert!(report.precondition_met);
        assert_abs_diff_eq!(report.lhs.unwrap(), 0.0, epsilon = 1e-12);
        assert_eq!(report.satisfied, Some(true));
    }

    #[test]
    fn deterministic_data_is_always_feasible() {
        // Data taken from a single assignment satisfies every cycle
        // inequality and admits the point-mass witness.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 3..=6usize {
            for _ in 0..10 {
                let a: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                let mut data = CorrelationData::<f64>::new(n);
                for i in 0..n {
                    data.set_average(i + 1, f64::from(a[i])).unwrap();
                    let j = (i + 1) % n;
                    data.set_correlation(i + 1, j + 1, f64::from(a[i] * a[j])).unwrap();
                }
                assert!(jpd_exists(n, &data).unwrap().feasible);
                for pattern in 0..1u32 << n {
                    let signs = SignPattern::new(
                        (0..n).map(|k| if pattern >> k & 1 == 1 { -1i8 } else { 1 }).collect(),
                    )
                    .unwrap();
                    let bound = noncontextual_bound(n, &signs).unwrap().bound;
                    assert!(cycle_value(&a, &signs) <= bound);
                }
            }
        }
    }

    #[test]
    fn mid_size_feasibility_stays_fast() {
        // Ten variables: 1024 atoms with full cycle data, both directions.
        let mut feasible_data = CorrelationData::<f64>::new(10);
        for i in 0..10usize {
            let j = (i + 1) % 10;
            feasible_data.set_correlation(i + 1, j + 1, 0.3).unwrap();
            feasible_data.set_average(i + 1, 0.1).unwrap();
        }
        assert!(jpd_exists(10, &feasible_data).unwrap().feasible);

        let mut infeasible_data = CorrelationData::<f64>::new(10);
        for i in 0..10usize {
            let j = (i + 1) % 10;
            // Perfect correlation around the cycle except one perfect
            // anticorrelation: parity makes this impossible.
            let value = if i == 9 { -1.0 } else { 1.0 };
            infeasible_data.set_correlation(i + 1, j + 1, value).unwrap();
        }
        let result = jpd_exists(10, &infeasible_data).unwrap();
        assert!(!result.feasible);
        assert!(result.certificate.is_some());
    }

    #[test]
    fn four_cycle_feasibility_matches_odd_inequalities() {
        // Correlation-only data for the 4-cycle is feasible exactly when all
        // eight odd-orientation inequalities hold.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let odd_patterns: Vec<SignPattern> = (0..16u32)
            .map(|bits| {
                SignPattern::new((0..4).map(|k| if bits >> k & 1 == 1 { -1i8 } else { 1 }).collect())
                    .unwrap()
            })
            .filter(|p| p.has_odd_minus_count())
            .collect();
        assert_eq!(odd_patterns.len(), 8);
        for _ in 0..300 {
            let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut data = CorrelationData::<f64>::new(4);
            for k in 0..4 {
                let (i, j) = (k + 1, (k + 1) % 4 + 1);
                data.set_correlation(i, j, c[k]).unwrap();
            }
            let feasible = jpd_exists(4, &data).unwrap().feasible;
            let satisfied = odd_patterns.iter().all(|signs| {
                let lhs: f64 = (0..4)
                    .map(|k| f64::from(signs.get(k)) * c[k])
                    .sum();
                lhs.abs() <= 2.0 + 1e-9
            });
            assert_eq!(feasible, satisfied, "at {c:?}");
        }
    }
}
