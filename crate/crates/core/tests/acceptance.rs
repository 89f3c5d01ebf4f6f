//! Acceptance suite: every release criterion as one test, each printing a
//! single PASS/FAIL line with its runtime. Run with
//! `cargo test -p ncycle --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ncycle::{
    average, chsh_from_local_pairs, chsh_operator, commutator_product, context_jpd_indexed,
    correlation, estimate_scenario, full_jpd, jpd_exists, noncontextual_bound,
    original_bell_check, quantum_value, suppes_zanotti_check, violation_analysis, BoundResult,
    CorrelationData, CycleScenario, Matrix64, SampleConfig, SignPattern,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SQRT8: f64 = 2.828_427_124_746_190_3;

fn report(name: &str, ok: bool, elapsed: Duration, limit: Duration) {
    println!(
        "criterion {name}: {} in {elapsed:?} (limit {limit:?})",
        if ok && elapsed <= limit { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {name} failed");
    assert!(
        elapsed <= limit,
        "criterion {name} exceeded its runtime limit: {elapsed:?} > {limit:?}"
    );
}

/// All eight four-cycle sign patterns with an odd number of minuses.
fn odd_patterns(n: usize) -> Vec<SignPattern> {
    (0..1u32 << n)
        .map(|bits| {
            SignPattern::new(
                (0..n)
                    .map(|k| if bits >> k & 1 == 1 { -1i8 } else { 1 })
                    .collect(),
            )
            .unwrap()
        })
        .filter(|p| p.has_odd_minus_count())
        .collect()
}

#[test]
fn criterion_01_classical_chsh_bound() {
    let signs = SignPattern::canonical_chsh();
    let start = Instant::now();
    let result = noncontextual_bound(4, &signs).unwrap();
    let elapsed = start.elapsed();
    let ok = result.bound == 2
        && ncycle::cycle_value(&result.assignment, &signs) == 2
        && result.assignment.iter().all(|a| a.abs() == 1);
    report("01 classical-chsh-bound", ok, elapsed, Duration::from_millis(1));
}

#[test]
fn criterion_02_quantum_maximum() {
    let quad = chsh_quadruple();
    let signs = SignPattern::canonical_chsh();
    let scenario = CycleScenario::new(quad.to_vec()).unwrap();
    let start = Instant::now();
    let verdict = violation_analysis(&quad, &signs).unwrap();
    let value = quantum_value(&scenario, &signs, &verdict.witness_state).unwrap();
    let elapsed = start.elapsed();
    let ok = (verdict.supremum - SQRT8).abs() <= 1e-8
        && (value - verdict.supremum).abs() <= 1e-8
        && verdict.condition_holds
        && verdict.violation_possible;
    report("02 quantum-maximum", ok, elapsed, Duration::from_millis(10));
}

#[test]
fn criterion_03_gamma_square_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0303);
    let signs = SignPattern::canonical_chsh();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..200 {
        let left_dim = 2 + (trial % 2);
        let right_dim = 2 + (trial / 2 % 2);
        let (b1, b3) = random_local_pair(&mut rng, left_dim, 0.0, ("B1", "B3"));
        let (b1, b3) = if trial % 3 == 0 {
            (b1, b3)
        } else {
            random_local_pair(&mut rng, left_dim, 0.05, ("B1", "B3"))
        };
        let (b2, b4) = if trial % 4 == 0 {
            random_local_pair(&mut rng, right_dim, 0.0, ("B2", "B4"))
        } else {
            random_local_pair(&mut rng, right_dim, 0.05, ("B2", "B4"))
        };
        let quad = chsh_from_local_pairs((&b1, &b3), (&b2, &b4)).unwrap();
        let gamma = chsh_operator(&quad, &signs).unwrap();
        let parts = commutator_product(&quad).unwrap();
        let four_identity = Matrix64::identity(gamma.dim()).scale_real(4.0);
        let residual = (&(&(&gamma * &gamma) - &four_identity) - &parts.product).max_entry_norm();
        worst = worst.max(residual);
    }
    let elapsed = start.elapsed();
    report(
        &format!("03 gamma-square-identity (worst residual {worst:.3e})"),
        worst <= 1e-8,
        elapsed,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_04_commuting_families_never_violate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0404);
    let patterns = odd_patterns(4);
    assert_eq!(patterns.len(), 8);
    let bounds: Vec<i64> = patterns
        .iter()
        .map(|p| noncontextual_bound(4, p).unwrap().bound)
        .collect();
    let start = Instant::now();
    let mut worst_excess = f64::NEG_INFINITY;
    for _ in 0..200 {
        let quad = random_commuting_quadruple(&mut rng, 4);
        let scenario = CycleScenario::new(quad.to_vec()).unwrap();
        for _ in 0..100 {
            let state = random_pure_state(&mut rng, 4);
            for (pattern, &bound) in patterns.iter().zip(&bounds) {
                let value = quantum_value(&scenario, pattern, &state).unwrap();
                worst_excess = worst_excess.max(value - bound as f64);
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        &format!("04 commuting-families-classical (worst excess {worst_excess:.3e})"),
        worst_excess <= 1e-9,
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_05_criterion_biconditional() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0505);
    let signs = SignPattern::canonical_chsh();
    let start = Instant::now();
    let mut ok = true;
    for trial in 0..200 {
        let zero_product = trial % 2 == 0;
        let dim = 2 + (trial % 2);
        let (b1, b3) = if zero_product {
            random_local_pair(&mut rng, dim, 0.0, ("B1", "B3"))
        } else {
            random_local_pair(&mut rng, dim, 0.05, ("B1", "B3"))
        };
        let (b2, b4) = random_local_pair(&mut rng, 2, if zero_product { 0.0 } else { 0.05 }, ("B2", "B4"));
        let quad = chsh_from_local_pairs((&b1, &b3), (&b2, &b4)).unwrap();
        let verdict = violation_analysis(&quad, &signs).unwrap();
        // The flag must track the supremum in every instance.
        ok &= verdict.violation_possible == (verdict.supremum > 2.0 + 1e-7);
        // Tensor instances realize both directions of the criterion.
        ok &= verdict.condition_holds == verdict.violation_possible;
        if verdict.product_norm <= 1e-9 {
            ok &= (verdict.supremum - 2.0).abs() <= 1e-8;
        }
        if zero_product {
            ok &= verdict.product_norm <= 1e-9;
        } else {
            ok &= verdict.condition_holds && verdict.supremum > 2.0 + 1e-7;
        }
        if !ok {
            panic!(
                "criterion 05 failed at trial {trial}: product_norm {}, supremum {}",
                verdict.product_norm, verdict.supremum
            );
        }
    }
    let elapsed = start.elapsed();
    report("05 criterion-biconditional", ok, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_06_odd_cycle_tight_bounds() {
    let start = Instant::now();
    let mut ok = true;
    for n in 3..=10usize {
        for pattern in odd_patterns(n) {
            let BoundResult { bound, assignment } = noncontextual_bound(n, &pattern).unwrap();
            ok &= bound == n as i64 - 2;
            ok &= ncycle::cycle_value(&assignment, &pattern) == bound;
        }
    }
    let elapsed = start.elapsed();
    report("06 odd-cycle-tight-bounds", ok, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_07_three_cycle_feasibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0707);
    let start = Instant::now();

    let contradictory = suppes_zanotti_check(1.0f64, -1.0, 1.0).unwrap();
    let mut ok = (contradictory.lhs - 3.0).abs() <= 1e-12 && !contradictory.satisfied;

    let mut data = CorrelationData::<f64>::new(3);
    data.set_correlation(1, 2, 1.0).unwrap();
    data.set_correlation(2, 3, -1.0).unwrap();
    data.set_correlation(1, 3, 1.0).unwrap();
    ok &= !jpd_exists(3, &data).unwrap().feasible;

    for _ in 0..1000 {
        let (c12, c23, c13) = (
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let report = suppes_zanotti_check(c12, c23, c13).unwrap();
        let mut data = CorrelationData::<f64>::new(3);
        data.set_correlation(1, 2, c12).unwrap();
        data.set_correlation(2, 3, c23).unwrap();
        data.set_correlation(1, 3, c13).unwrap();
        let feasible = jpd_exists(3, &data).unwrap().feasible;
        if report.all_satisfied != feasible {
            panic!("disagreement at ({c12}, {c23}, {c13})");
        }
    }
    let elapsed = start.elapsed();
    report("07 three-cycle-feasibility", ok, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_08_perfect_correlation_bell() {
    let start = Instant::now();
    // Brute force over deterministic assignments with X2 = X3 enforced.
    let mut classical_max = i64::MIN;
    for bits in 0..16u8 {
        let a: Vec<i64> = (0..4).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
        if a[1] != a[2] {
            continue;
        }
        classical_max = classical_max.max(a[0] * a[1] - a[2] * a[3] + a[0] * a[3]);
    }
    let mut ok = classical_max == 1;

    let boundary = original_bell_check(1.0f64, 1.0, 1.0, 1.0).unwrap();
    ok &= boundary.precondition_met
        && (boundary.lhs.unwrap() - 1.0).abs() <= 1e-12
        && boundary.satisfied == Some(true);

    // Precondition fails beyond the precision tolerance.
    let off = original_bell_check(1.0f64, 1.0, 1.0, 1.0 - 2e-6).unwrap();
    ok &= !off.precondition_met && off.lhs.is_none();
    let within = original_bell_check(1.0f64, 1.0, 1.0, 1.0 - 5e-7).unwrap();
    ok &= within.precondition_met;

    let elapsed = start.elapsed();
    report("08 perfect-correlation-bell", ok, elapsed, Duration::from_secs(1));
}

#[test]
fn criterion_09_no_signaling_and_marginals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0909);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let quad = random_commuting_quadruple(&mut rng, 4);
        let state = random_pure_state(&mut rng, 4);

        // Single-variable marginals agree across the two contexts holding
        // each observable, and with the exact average.
        for i in 0..4usize {
            let left_edge = (i + 3) % 4;
            let left = context_jpd_indexed(
                &state,
                &[quad[left_edge].clone(), quad[i].clone()],
                &[left_edge + 1, i + 1],
            )
            .unwrap();
            let right = context_jpd_indexed(
                &state,
                &[quad[i].clone(), quad[(i + 1) % 4].clone()],
                &[i + 1, (i + 1) % 4 + 1],
            )
            .unwrap();
            let from_left = left.marginal(&[i + 1]).unwrap();
            let from_right = right.marginal(&[i + 1]).unwrap();
            for outcome in [[-1i8], [1]] {
                worst = worst
                    .max((from_left.probability(&outcome) - from_right.probability(&outcome)).abs());
            }
            let mean = average(&state, &quad[i]).unwrap();
            worst = worst.max((from_left.product_expectation(&[0]) - mean).abs());
        }

        // Rank-3 to rank-2 consistency on the first commuting triple.
        let triple = [quad[0].clone(), quad[1].clone(), quad[2].clone()];
        let joint = full_jpd(&state, &triple).unwrap();
        for (a, b) in [(1usize, 2usize), (2, 3), (1, 3)] {
            let marginal = joint.marginal(&[a, b]).unwrap();
            let direct = context_jpd_indexed(
                &state,
                &[triple[a - 1].clone(), triple[b - 1].clone()],
                &[a, b],
            )
            .unwrap();
            for (outcome, &p) in direct.probabilities() {
                worst = worst.max((marginal.probability(outcome) - p).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        &format!("09 no-signaling-marginals (worst gap {worst:.3e})"),
        worst <= 1e-9,
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_10_sampler_statistics() {
    let quad = chsh_quadruple();
    let scenario = CycleScenario::new(quad.to_vec()).unwrap();
    let witness = chsh_witness();
    let signs = SignPattern::canonical_chsh();
    let config = SampleConfig::new(42, 1_000_000).unwrap();

    let start = Instant::now();
    let empirical = estimate_scenario(&scenario, &witness, &config).unwrap();
    let estimate: f64 = empirical
        .contexts
        .iter()
        .enumerate()
        .map(|(k, ctx)| f64::from(signs.get(k)) * ctx.correlation)
        .sum();
    let rerun = estimate_scenario(&scenario, &witness, &config).unwrap();
    let elapsed = start.elapsed();

    // Cross-check the sampled correlations against the exact engine values.
    let mut exact_ok = true;
    for (k, ctx) in empirical.contexts.iter().enumerate() {
        let (i, j) = (k, (k + 1) % 4);
        let exact = correlation(&witness, scenario.observable(i), scenario.observable(j)).unwrap();
        exact_ok &= (ctx.correlation - exact).abs() <= 5.0 * ctx.correlation_se.max(1e-4);
    }

    let ok = (estimate - SQRT8).abs() <= 0.01
        && !empirical.no_signaling_anomalous
        && rerun == empirical
        && exact_ok;
    report(
        &format!("10 sampler-statistics (estimate {estimate:.5})"),
        ok,
        elapsed,
        Duration::from_secs(30),
    );
}
