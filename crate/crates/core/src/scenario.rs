//! Cycle scenarios: `n` dichotomous observables whose measurement contexts
//! are the consecutive pairs around a cycle, plus the sign patterns that
//! weight each context in a cycle inequality.

use crate::error::{Error, Result};
use crate::matrix::commutator_residual;
use crate::observable::HermitianObservable;
use crate::scalar::Scalar;

/// Minimum cycle length.
pub const MIN_CYCLE: usize = 3;

/// `n` equal-dimension dichotomous observables with contexts
/// `{1,2}, {2,3}, ..., {n,1}`.
///
/// The context list is implied by the cycle structure and never stored;
/// [`CycleScenario::contexts`] materializes it with 1-based indices to match
/// the external data formats.
#[derive(Debug, Clone)]
pub struct CycleScenario<T> {
    observables: Vec<HermitianObservable<T>>,
}

impl<T: Scalar> CycleScenario<T> {
    /// Validates the cycle invariants: at least three observables, equal
    /// dimensions, every observable dichotomous.
    pub fn new(observables: Vec<HermitianObservable<T>>) -> Result<Self> {
        if observables.len() < MIN_CYCLE {
            return Err(Error::TooFewObservables {
                found: observables.len(),
                min: MIN_CYCLE,
            });
        }
        let dim = observables[0].dim();
        for obs in &observables {
            if obs.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
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
        Ok(Self { observables })
    }

    pub fn n(&self) -> usize {
        self.observables.len()
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    pub fn observables(&self) -> &[HermitianObservable<T>] {
        &self.observables
    }

    pub fn observable(&self, index: usize) -> &HermitianObservable<T> {
        &self.observables[index]
    }

    /// The maximal contexts as 1-based index pairs:
    /// `(1,2), (2,3), ..., (n,1)`.
    pub fn contexts(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..=n).map(|i| (i, i % n + 1)).collect()
    }

    /// Edge `k` (0-based) as 0-based observable indices.
    pub(crate) fn edge(&self, k: usize) -> (usize, usize) {
        let n = self.n();
        (k, (k + 1) % n)
    }

    /// Computes the commutator residual of every context edge against the
    /// given tolerance. A failed check is a report, not an error.
    pub fn validate_compatibility(&self, tolerance: T) -> CompatibilityReport<T> {
        let n = self.n();
        let mut edges = Vec::with_capacity(n);
        for k in 0..n {
            let (a, b) = self.edge(k);
            let residual = commutator_residual(self.observables[a].matrix(), self.observables[b].matrix())
                .expect("equal dimensions by construction");
            edges.push(EdgeCompatibility {
                i: a + 1,
                j: b + 1,
                residual,
                compatible: residual <= tolerance,
            });
        }
        let overall_ok = edges.iter().all(|e| e.compatible);
        CompatibilityReport {
            edges,
            tolerance,
            overall_ok,
        }
    }

    /// Convenience check with the crate-default tolerance; returns the first
    /// offending edge as an error.
    pub(crate) fn require_compatible(&self) -> Result<()> {
        let report = self.validate_compatibility(T::COMPATIBILITY_TOL);
        match report.first_violation() {
            None => Ok(()),
            Some(edge) => Err(Error::IncompatiblePair {
                i: edge.i,
                j: edge.j,
                residual: edge.residual.to_f64().unwrap_or(f64::NAN),
            }),
        }
    }
}

/// Compatibility of a single context edge, 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCompatibility<T> {
    pub i: usize,
    pub j: usize,
    pub residual: T,
    pub compatible: bool,
}

/// Outcome of checking every context edge of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibilityReport<T> {
    pub edges: Vec<EdgeCompatibility<T>>,
    pub tolerance: T,
    pub overall_ok: bool,
}

impl<T: Scalar> CompatibilityReport<T> {
    pub fn first_violation(&self) -> Option<&EdgeCompatibility<T>> {
        self.edges.iter().find(|e| !e.compatible)
    }
}

/// The plus/minus coefficients attached to the context edges of a cycle
/// inequality. The canonical CHSH pattern is `(+, +, +, -)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        for &s in &signs {
            if s != 1 && s != -1 {
                return Err(Error::BadSign { value: s });
            }
        }
        Ok(Self { signs })
    }

    /// `(+, +, +, -)`.
    pub fn canonical_chsh() -> Self {
        Self {
            signs: vec![1, 1, 1, -1],
        }
    }

    /// All plus except a single minus on the closing edge `(n, 1)`; the
    /// canonical odd pattern for any cycle length.
    pub fn single_minus(n: usize) -> Self {
        let mut signs = vec![1; n];
        if n > 0 {
            signs[n - 1] = -1;
        }
        Self { signs }
    }

    pub fn all_plus(n: usize) -> Self {
        Self { signs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn get(&self, k: usize) -> i8 {
        self.signs[k]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.signs
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn has_odd_minus_count(&self) -> bool {
        self.minus_count() % 2 == 1
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub(crate) fn require_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::SignPatternLength {
                expected: n,
                found: self.len(),
            })
        }
    }
}
