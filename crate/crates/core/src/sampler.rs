//! Seeded Monte Carlo simulation of per-context measurements.
//!
//! Each context is sampled independently from its exact joint distribution
//! with a ChaCha8 stream seeded through a splitmix64 derivation from the
//! master seed and the context index, so runs are reproducible and contexts
//! are statistically independent. Acceptance of sampled data is statistical
//! (standard-error envelopes), never bit-level across platforms; bit-level
//! determinism holds for identical builds and inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jpd::{context_jpd_indexed, CorrelationData};
use crate::observable::HermitianObservable;
use crate::scalar::Scalar;
use crate::scenario::CycleScenario;
use crate::state::QuantumState;

/// Seed and shot budget of a sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub shots: u64,
}

impl SampleConfig {
    pub fn new(seed: u64, shots: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(Self { seed, shots })
    }
}

fn splitmix_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for stream `k`: the `(k+1)`-th output of the splitmix64
/// sequence started at `seed`.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut state = seed;
    let mut out = 0;
    for _ in 0..=stream {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        out = splitmix_finalize(state);
    }
    out
}

/// Outcome counts of one sampled context, keyed by the `(a, b)` outcome
/// pair; all four keys are always present.
pub type PairCounts = BTreeMap<(i8, i8), u64>;

/// Draws `shots` samples from the joint distribution of a commuting pair by
/// inverse-CDF over the four outcomes. Deterministic in all arguments.
pub fn sample_context<T: Scalar>(
    state: &QuantumState<T>,
    a: &HermitianObservable<T>,
    b: &HermitianObservable<T>,
    shots: u64,
    seed: u64,
) -> Result<PairCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let jpd = context_jpd_indexed(state, &[a.clone(), b.clone()], &[1, 2])?;
    let outcomes: Vec<((i8, i8), f64)> = jpd
        .probabilities()
        .iter()
        .map(|(tuple, &p)| ((tuple[0], tuple[1]), p.to_f64().unwrap_or(0.0)))
        .collect();
    let mut cumulative = Vec::with_capacity(outcomes.len());
    let mut acc = 0.0;
    for &(key, p) in &outcomes {
        acc += p;
        cumulative.push((key, acc));
    }

    let mut counts: PairCounts = outcomes.iter().map(|&(key, _)| (key, 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        let u: f64 = rng.gen();
        let mut chosen = cumulative[cumulative.len() - 1].0;
        for &(key, edge) in &cumulative {
            if u < edge {
                chosen = key;
                break;
            }
        }
        *counts.get_mut(&chosen).expect("key present") += 1;
    }
    Ok(counts)
}

/// Everything estimated from sampling one context.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextSample<T> {
    /// 1-based indices of the two observables measured together.
    pub edge: (usize, usize),
    pub counts: PairCounts,
    /// Estimated `<X_i X_j>`.
    pub correlation: T,
    /// Standard error `sqrt((1 - c^2) / shots)` of the product estimator.
    pub correlation_se: T,
    /// Estimated `(<X_i>, <X_j>)` from this context alone.
    pub averages: (T, T),
}

/// Sampled scenario data: per-context counts and the derived correlation
/// estimates with standard errors, plus the empirical no-signaling audit.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalData<T> {
    pub config: SampleConfig,
    pub contexts: Vec<ContextSample<T>>,
    /// Pooled estimates: averages from both adjacent contexts, correlations
    /// per cycle edge, each with standard errors.
    pub data: CorrelationData<T>,
    /// Largest difference between the two per-context estimates of the same
    /// single-observable average.
    pub no_signaling_residual: T,
    /// Whether any observable's residual exceeds five standard errors of
    /// the difference.
    pub no_signaling_anomalous: bool,
}

/// Samples every context of a scenario with per-context derived sub-seeds
/// and assembles the empirical estimates.
pub fn estimate_scenario<T: Scalar>(
    scenario: &CycleScenario<T>,
    state: &QuantumState<T>,
    config: &SampleConfig,
) -> Result<EmpiricalData<T>> {
    if config.shots == 0 {
        return Err(Error::ZeroShots);
    }
    scenario.require_compatible()?;
    let n = scenario.n();
    let shots_real = T::from_u64(config.shots).unwrap();

    let mut contexts = Vec::with_capacity(n);
    // Per observable: (estimate from context where it is first, second).
    let mut left_estimates = vec![T::zero(); n];
    let mut right_estimates = vec![T::zero(); n];
    for k in 0..n {
        let (i, j) = scenario.edge(k);
        let seed = split_seed(config.seed, k as u64);
        let counts = sample_context(
            state,
            scenario.observable(i),
            scenario.observable(j),
            config.shots,
            seed,
        )?;
        let mut product_sum = 0i64;
        let mut first_sum = 0i64;
        let mut second_sum = 0i64;
        for (&(a, b), &count) in &counts {
            let count = count as i64;
            product_sum += i64::from(a) * i64::from(b) * count;
            first_sum += i64::from(a) * count;
            second_sum += i64::from(b) * count;
        }
        let correlation = T::from_i64(product_sum).unwrap() / shots_real;
        let first_avg = T::from_i64(first_sum).unwrap() / shots_real;
        let second_avg = T::from_i64(second_sum).unwrap() / shots_real;
        left_estimates[i] = first_avg;
        right_estimates[j] = second_avg;
        contexts.push(ContextSample {
            edge: (i + 1, j + 1),
            counts,
            correlation,
            correlation_se: product_se(correlation, shots_real),
            averages: (first_avg, second_avg),
        });
    }

    let mut data = CorrelationData::new(n);
    for k in 0..n {
        let (i, j) = scenario.edge(k);
        data.set_correlation(i + 1, j + 1, contexts[k].correlation)?;
        data.set_correlation_error(i + 1, j + 1, contexts[k].correlation_se)?;
    }
    let two = T::one() + T::one();
    let mut residual = T::zero();
    let mut anomalous = false;
    for i in 0..n {
        let pooled = (left_estimates[i] + right_estimates[i]) / two;
        data.set_average(i + 1, pooled.max(-T::one()).min(T::one()))?;
        data.set_average_error(i + 1, product_se(pooled, two * shots_real))?;
        let difference = (left_estimates[i] - right_estimates[i]).abs();
        residual = residual.max(difference);
        let se_left = product_se(left_estimates[i], shots_real);
        let se_right = product_se(right_estimates[i], shots_real);
        let se_difference = (se_left * se_left + se_right * se_right).sqrt();
        let five = T::from_f64(5.0).unwrap();
        if difference > five * se_difference {
            anomalous = true;
        }
    }

    Ok(EmpiricalData {
        config: *config,
        contexts,
        data,
        no_signaling_residual: residual,
        no_signaling_anomalous: anomalous,
    })
}

/// Exact standard error of the mean of a `{-1, +1}`-valued estimator.
fn product_se<T: Scalar>(estimate: T, samples: T) -> T {
    ((T::one() - estimate * estimate).max(T::zero()) / samples).sqrt()
}
