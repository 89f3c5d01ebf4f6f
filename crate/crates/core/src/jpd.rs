//! Joint probability distributions of compatible dichotomous observables,
//! their marginals, and the exact correlation/average functionals.
//!
//! For a commuting family the outcome probability of a tuple
//! `(a_1, ..., a_k)` is the trace of the state against the product of the
//! corresponding spectral projectors. The result is a genuine probability
//! distribution whenever the family commutes; residual numerical negativity
//! inside the clamping tolerance is zeroed and the distribution renormalized,
//! anything larger signals an upstream compatibility breach and is an error.

use std::collections::BTreeMap;

use crate::eigen::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::matrix::{commutator_residual, ComplexMatrix};
use crate::observable::HermitianObservable;
use crate::scalar::Scalar;
use crate::state::QuantumState;

/// Largest number of jointly distributed variables; bounds the `2^k` outcome
/// table.
pub const MAX_JOINT_VARIABLES: usize = 16;

/// A probability distribution over `{-1, +1}^k` outcome tuples for a list of
/// named variables. Every one of the `2^k` tuples is present as a key.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    indices: Vec<usize>,
    probabilities: BTreeMap<Vec<i8>, T>,
}

impl<T: Scalar> JointDistribution<T> {
    /// 1-based variable indices, in tuple-coordinate order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn probabilities(&self) -> &BTreeMap<Vec<i8>, T> {
        &self.probabilities
    }

    pub fn probability(&self, outcome: &[i8]) -> T {
        self.probabilities
            .get(outcome)
            .copied()
            .unwrap_or_else(T::zero)
    }

    /// Expectation of the product of the variables at the given tuple
    /// positions (0-based coordinates).
    pub fn product_expectation(&self, coordinates: &[usize]) -> T {
        let mut total = T::zero();
        for (outcome, &p) in &self.probabilities {
            let mut sign = 1i8;
            for &c in coordinates {
                sign *= outcome[c];
            }
            if sign > 0 {
                total += p;
            } else {
                total -= p;
            }
        }
        total
    }

    /// Sums out every variable not in `subset`; the result's coordinates
    /// follow the order of `subset`.
    pub fn marginal(&self, subset: &[usize]) -> Result<JointDistribution<T>> {
        let mut positions = Vec::with_capacity(subset.len());
        for &index in subset {
            match self.indices.iter().position(|&i| i == index) {
                Some(pos) => positions.push(pos),
                None => return Err(Error::SubsetNotContained { index }),
            }
        }
        let mut probabilities: BTreeMap<Vec<i8>, T> = BTreeMap::new();
        for tuple in outcome_tuples(subset.len()) {
            probabilities.insert(tuple, T::zero());
        }
        for (outcome, &p) in &self.probabilities {
            let projected: Vec<i8> = positions.iter().map(|&pos| outcome[pos]).collect();
            *probabilities.get_mut(&projected).expect("all tuples present") += p;
        }
        Ok(JointDistribution {
            indices: subset.to_vec(),
            probabilities,
        })
    }
}

fn outcome_tuples(k: usize) -> Vec<Vec<i8>> {
    let mut tuples = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(tuples.len() * 2);
        for t in &tuples {
            for &a in &[-1i8, 1] {
                let mut e = t.clone();
                e.push(a);
                next.push(e);
            }
        }
        tuples = next;
    }
    tuples
}

fn require_compatible_family<T: Scalar>(
    observables: &[HermitianObservable<T>],
    indices: &[usize],
) -> Result<()> {
    for p in 0..observables.len() {
        for q in p + 1..observables.len() {
            let residual =
                commutator_residual(observables[p].matrix(), observables[q].matrix())?;
            if residual > T::COMPATIBILITY_TOL {
                return Err(Error::IncompatiblePair {
                    i: indices[p],
                    j: indices[q],
                    residual: residual.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }
    Ok(())
}

/// Joint distribution of a mutually commuting family against a state, with
/// explicit 1-based variable indices (used when the family is a slice of a
/// larger scenario).
pub fn context_jpd_indexed<T: Scalar>(
    state: &QuantumState<T>,
    observables: &[HermitianObservable<T>],
    indices: &[usize],
) -> Result<JointDistribution<T>> {
    let k = observables.len();
    if k == 0 {
        return Err(Error::InvalidCorrelationData {
            reason: "empty observable family".into(),
        });
    }
    if k > MAX_JOINT_VARIABLES {
        return Err(Error::TooManyVariables {
            n: k,
            max: MAX_JOINT_VARIABLES,
        });
    }
    if indices.len() != k {
        return Err(Error::InvalidCorrelationData {
            reason: format!("{} indices for {} observables", indices.len(), k),
        });
    }
    for (pos, &i) in indices.iter().enumerate() {
        if indices[..pos].contains(&i) {
            return Err(Error::DuplicateIndex { index: i });
        }
    }
    for obs in observables {
        if obs.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                left: state.dim(),
                right: obs.dim(),
            });
        }
        if !obs.is_dichotomous() {
            return Err(Error::NotDichotomous {
                label: obs.label().to_string(),
                deviation: f64::NAN,
                tolerance: T::DICHOTOMY_TOL.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    require_compatible_family(observables, indices)?;

    // Sign projectors per observable: E_{-1}, E_{+1}.
    let mut projectors = Vec::with_capacity(k);
    for obs in observables {
        let decomposition = SpectralDecomposition::compute(obs.matrix())?;
        projectors.push([
            decomposition.sign_projector(-1),
            decomposition.sign_projector(1),
        ]);
    }

    // Walk the outcome tree accumulating projector products so each node
    // costs a single matrix multiplication.
    let mut probabilities: BTreeMap<Vec<i8>, T> = BTreeMap::new();
    let identity = ComplexMatrix::<T>::identity(state.dim());
    let mut outcome = Vec::with_capacity(k);
    collect_probabilities(
        state,
        &projectors,
        &identity,
        &mut outcome,
        &mut probabilities,
    )?;

    // Clamp tolerated negativity, then renormalize so the table sums to one.
    let mut sum = T::zero();
    for p in probabilities.values_mut() {
        if *p < T::zero() {
            if *p < -T::PROB_CLAMP {
                return Err(Error::NegativeProbability {
                    value: p.to_f64().unwrap_or(f64::NAN),
                });
            }
            *p = T::zero();
        }
        sum += *p;
    }
    if (sum - T::one()).abs() > T::PROB_TOL {
        return Err(Error::NotNormalized {
            sum: sum.to_f64().unwrap_or(f64::NAN),
        });
    }
    for p in probabilities.values_mut() {
        *p /= sum;
    }

    Ok(JointDistribution {
        indices: indices.to_vec(),
        probabilities,
    })
}

fn collect_probabilities<T: Scalar>(
    state: &QuantumState<T>,
    projectors: &[[ComplexMatrix<T>; 2]],
    prefix: &ComplexMatrix<T>,
    outcome: &mut Vec<i8>,
    probabilities: &mut BTreeMap<Vec<i8>, T>,
) -> Result<()> {
    let depth = outcome.len();
    if depth == projectors.len() {
        let value = state.trace_with(prefix);
        if value.im.abs() > T::PROB_TOL {
            return Err(Error::ComplexProbability {
                value: value.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        probabilities.insert(outcome.clone(), value.re);
        return Ok(());
    }
    for (slot, alpha) in [(0usize, -1i8), (1, 1)] {
        let product = prefix * &projectors[depth][slot];
        outcome.push(alpha);
        collect_probabilities(state, projectors, &product, outcome, probabilities)?;
        outcome.pop();
    }
    Ok(())
}

/// Joint distribution of a mutually commuting family, variables numbered
/// `1..=k` in list order.
pub fn context_jpd<T: Scalar>(
    state: &QuantumState<T>,
    observables: &[HermitianObservable<T>],
) -> Result<JointDistribution<T>> {
    let indices: Vec<usize> = (1..=observables.len()).collect();
    context_jpd_indexed(state, observables, &indices)
}

/// Joint distribution of all `n` observables at once. Requires every pair to
/// commute; pairwise compatibility is enough for the joint object to exist.
pub fn full_jpd<T: Scalar>(
    state: &QuantumState<T>,
    observables: &[HermitianObservable<T>],
) -> Result<JointDistribution<T>> {
    context_jpd(state, observables)
}

/// `Tr(rho a b)` for a commuting pair.
pub fn correlation<T: Scalar>(
    state: &QuantumState<T>,
    a: &HermitianObservable<T>,
    b: &HermitianObservable<T>,
) -> Result<T> {
    if a.dim() != state.dim() || b.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: if a.dim() != state.dim() { a.dim() } else { b.dim() },
        });
    }
    let residual = commutator_residual(a.matrix(), b.matrix())?;
    if residual > T::COMPATIBILITY_TOL {
        return Err(Error::IncompatiblePair {
            i: 1,
            j: 2,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(state.trace_with(&(a.matrix() * b.matrix())).re)
}

/// `Tr(rho a)`.
pub fn average<T: Scalar>(state: &QuantumState<T>, a: &HermitianObservable<T>) -> Result<T> {
    if a.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: a.dim(),
        });
    }
    Ok(state.trace_with(a.matrix()).re)
}

/// Single-observable averages and pairwise correlations for `n` variables,
/// optionally with standard errors. Entries absent from the maps are
/// unconstrained; the feasibility solver ignores them.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationData<T> {
    n: usize,
    averages: Vec<Option<T>>,
    correlations: BTreeMap<(usize, usize), T>,
    average_errors: Vec<Option<T>>,
    correlation_errors: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> CorrelationData<T> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            averages: vec![None; n],
            correlations: BTreeMap::new(),
            average_errors: vec![None; n],
            correlation_errors: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_range(value: T) -> Result<()> {
        if value.abs() > T::one() + T::RANGE_TOL {
            return Err(Error::CorrelationOutOfRange {
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidCorrelationData {
                reason: format!("variable index {i} outside 1..={}", self.n),
            });
        }
        Ok(())
    }

    fn pair_key(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidCorrelationData {
                reason: format!("correlation of variable {i} with itself"),
            });
        }
        Ok((i.min(j), i.max(j)))
    }

    /// Sets `<X_i>` (1-based).
    pub fn set_average(&mut self, i: usize, value: T) -> Result<()> {
        self.check_index(i)?;
        Self::check_range(value)?;
        self.averages[i - 1] = Some(value);
        Ok(())
    }

    /// Sets `<X_i X_j>` (1-based, order-insensitive).
    pub fn set_correlation(&mut self, i: usize, j: usize, value: T) -> Result<()> {
        let key = self.pair_key(i, j)?;
        Self::check_range(value)?;
        self.correlations.insert(key, value);
        Ok(())
    }

    pub fn set_average_error(&mut self, i: usize, error: T) -> Result<()> {
        self.check_index(i)?;
        self.average_errors[i - 1] = Some(error);
        Ok(())
    }

    pub fn set_correlation_error(&mut self, i: usize, j: usize, error: T) -> Result<()> {
        let key = self.pair_key(i, j)?;
        self.correlation_errors.insert(key, error);
        Ok(())
    }

    pub fn average(&self, i: usize) -> Option<T> {
        self.averages.get(i - 1).copied().flatten()
    }

    pub fn correlation(&self, i: usize, j: usize) -> Option<T> {
        self.correlations.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn averages(&self) -> &[Option<T>] {
        &self.averages
    }

    pub fn correlations(&self) -> &BTreeMap<(usize, usize), T> {
        &self.correlations
    }

    pub fn average_error(&self, i: usize) -> Option<T> {
        self.average_errors.get(i - 1).copied().flatten()
    }

    pub fn correlation_error(&self, i: usize, j: usize) -> Option<T> {
        self.correlation_errors.get(&(i.min(j), i.max(j))).copied()
    }
}

/// Exact averages and cycle-edge correlations of a scenario against a state.
pub fn exact_correlations<T: Scalar>(
    scenario: &crate::scenario::CycleScenario<T>,
    state: &QuantumState<T>,
) -> Result<CorrelationData<T>> {
    let n = scenario.n();
    let mut data = CorrelationData::new(n);
    for i in 0..n {
        data.set_average(i + 1, average(state, scenario.observable(i))?)?;
    }
    for k in 0..n {
        let (a, b) = scenario.edge(k);
        let c = correlation(state, scenario.observable(a), scenario.observable(b))?;
        // Exact values can overshoot [-1, 1] by strict rounding noise only.
        let clamped = c.max(-T::one()).min(T::one());
        data.set_correlation(a + 1, b + 1, clamped)?;
    }
    Ok(data)
}
