//! Report construction. All floating-point values in reports are rounded to
//! nine significant digits so the output is stable across platforms.

use ncycle::{
    average, exact_correlations, jpd_exists, noncontextual_bound, original_bell_check,
    quantum_value, suppes_zanotti_check, violation_analysis, CompatibilityReport,
    CorrelationData64, FeasibilityResult, Scenario64, SignPattern, State64, ViolationAnalysis,
};
use serde_json::{json, Value};

use crate::AppError;

/// Rounds to nine significant digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let digits = 8 - x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}

fn complex_list(matrix: &ncycle::Matrix64) -> Value {
    Value::Array(
        matrix
            .entries()
            .iter()
            .map(|z| json!([sig9(z.re), sig9(z.im)]))
            .collect(),
    )
}

fn compatibility_json(report: &CompatibilityReport<f64>) -> Value {
    json!({
        "tolerance": sig9(report.tolerance),
        "overall_ok": report.overall_ok,
        "edges": report.edges.iter().map(|e| json!({
            "i": e.i,
            "j": e.j,
            "residual": sig9(e.residual),
            "compatible": e.compatible,
        })).collect::<Vec<_>>(),
    })
}

fn feasibility_json(result: &FeasibilityResult<f64>) -> Value {
    json!({
        "feasible": result.feasible,
        "witness": result.witness.as_ref().map(|w| w.iter().map(|(assignment, p)| json!({
            "assignment": assignment,
            "probability": sig9(*p),
        })).collect::<Vec<_>>()),
        "certificate": result.certificate.as_ref().map(|c| json!({
            "description": c.description,
            "combination": sig9(c.combination),
            "max_attainable": sig9(c.max_attainable),
        })),
    })
}

fn violation_json(verdict: &ViolationAnalysis<f64>) -> Value {
    json!({
        "commutator_observables": ["i[X1,X3]", "i[X4,X2]"],
        "product_norm": sig9(verdict.product_norm),
        "condition_holds": verdict.condition_holds,
        "supremum": sig9(verdict.supremum),
        "violation_possible": verdict.violation_possible,
        "witness_state": complex_list(verdict.witness_state.matrix()),
    })
}

fn correlations_json(data: &CorrelationData64) -> Value {
    json!({
        "averages": data.averages().iter().map(|a| a.map(sig9)).collect::<Vec<_>>(),
        "pairs": data.correlations().iter().map(|(&(i, j), &v)| json!({
            "i": i, "j": j, "value": sig9(v),
        })).collect::<Vec<_>>(),
    })
}

/// The condition tolerance used for the strict `>` comparisons, mirrored
/// from the core scalar configuration.
const CONDITION_TOL: f64 = 1e-7;

/// Full analysis of a validated scenario.
pub fn analyze_scenario(
    scenario: &Scenario64,
    signs: &SignPattern,
    state: Option<&State64>,
    tolerance: f64,
) -> Result<Value, AppError> {
    let n = scenario.n();
    let compatibility = scenario.validate_compatibility(tolerance);
    if let Some(edge) = compatibility.first_violation() {
        return Err(AppError::usage(format!(
            "declared context ({}, {}) is incompatible: commutator residual {:.3e} exceeds tolerance {:.1e}",
            edge.i, edge.j, edge.residual, tolerance
        )));
    }
    let bound = noncontextual_bound(n, signs).map_err(AppError::from_core)?;

    let (violation_section, violation_note) = if n != 4 {
        (Value::Null, Some("violation criterion applies to 4-cycles only".to_string()))
    } else if !signs.has_odd_minus_count() {
        (
            Value::Null,
            Some("sign pattern has an even number of minus signs; criterion undefined".to_string()),
        )
    } else {
        let quad: [ncycle::Observable64; 4] =
            std::array::from_fn(|i| scenario.observable(i).clone());
        let verdict = violation_analysis(&quad, signs).map_err(AppError::from_core)?;
        (violation_json(&verdict), None)
    };

    let mut quantum = Value::Null;
    let mut correlations = Value::Null;
    let mut feasibility = Value::Null;
    let mut violation = Value::Null;
    if let Some(state) = state {
        let value = quantum_value(scenario, signs, state).map_err(AppError::from_core)?;
        quantum = json!(sig9(value));
        violation = json!(value > bound.bound as f64 + CONDITION_TOL);
        let data = exact_correlations(scenario, state).map_err(AppError::from_core)?;
        correlations = correlations_json(&data);
        if n <= ncycle::MAX_FEASIBILITY {
            let result = jpd_exists(n, &data).map_err(AppError::from_core)?;
            feasibility = feasibility_json(&result);
        }
    }

    Ok(json!({
        "kind": "analysis",
        "scenario": {
            "n": n,
            "dim": scenario.dim(),
            "labels": scenario.observables().iter().map(|o| o.label()).collect::<Vec<_>>(),
            "contexts": scenario.contexts().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        },
        "signs": signs.as_slice(),
        "compatibility": compatibility_json(&compatibility),
        "classical_bound": {
            "bound": bound.bound,
            "assignment": bound.assignment,
        },
        "violation_analysis": violation_section,
        "violation_analysis_note": violation_note,
        "quantum_value": quantum,
        "correlations": correlations,
        "jpd_exists": feasibility,
        "violation": violation,
    }))
}

/// Classical analysis of bare correlation data.
pub fn analyze_correlations(n: usize, data: &CorrelationData64) -> Result<Value, AppError> {
    let feasibility = jpd_exists(n, data).map_err(AppError::from_core)?;

    let all_pairs_of = |pairs: &[(usize, usize)]| {
        pairs
            .iter()
            .map(|&(i, j)| data.correlation(i, j))
            .collect::<Option<Vec<f64>>>()
    };

    let suppes_zanotti = if n == 3 {
        all_pairs_of(&[(1, 2), (2, 3), (1, 3)]).map(|c| {
            let report = suppes_zanotti_check(c[0], c[1], c[2]).map_err(AppError::from_core)?;
            Ok(json!({
                "lhs": sig9(report.lhs),
                "satisfied": report.satisfied,
                "orientations": report.orientations.iter().map(|o| json!({
                    "signs": o.signs,
                    "lhs": sig9(o.lhs),
                    "satisfied": o.satisfied,
                })).collect::<Vec<_>>(),
                "all_satisfied": report.all_satisfied,
            }))
        })
    } else {
        None
    };
    let suppes_zanotti = match suppes_zanotti {
        Some(result) => result?,
        None => Value::Null,
    };

    let original_bell = if n == 4 {
        all_pairs_of(&[(1, 2), (3, 4), (1, 4), (2, 3)]).map(|c| {
            let report = original_bell_check(c[0], c[1], c[2], c[3]).map_err(AppError::from_core)?;
            Ok(json!({
                "precondition_met": report.precondition_met,
                "c23": sig9(report.c23),
                "lhs": report.lhs.map(sig9),
                "satisfied": report.satisfied,
            }))
        })
    } else {
        None
    };
    let original_bell = match original_bell {
        Some(result) => result?,
        None => Value::Null,
    };

    Ok(json!({
        "kind": "correlation-analysis",
        "n": n,
        "data": correlations_json(data),
        "jpd_exists": feasibility_json(&feasibility),
        "suppes_zanotti": suppes_zanotti,
        "original_bell": original_bell,
    }))
}

/// Sampling report for one scenario run.
pub fn sample_report(
    scenario: &Scenario64,
    state: &State64,
    signs: &SignPattern,
    empirical: &ncycle::EmpiricalData<f64>,
) -> Result<Value, AppError> {
    let n = scenario.n();
    let cycle_estimate: f64 = empirical
        .contexts
        .iter()
        .enumerate()
        .map(|(k, ctx)| f64::from(signs.get(k)) * ctx.correlation)
        .sum();
    // Exact averages for reference; cheap against the sampling itself.
    let exact: Vec<f64> = (0..n)
        .map(|i| average(state, scenario.observable(i)))
        .collect::<Result<_, _>>()
        .map_err(AppError::from_core)?;

    Ok(json!({
        "kind": "sample",
        "seed": empirical.config.seed,
        "shots_per_context": empirical.config.shots,
        "signs": signs.as_slice(),
        "contexts": empirical.contexts.iter().map(|ctx| json!({
            "edge": [ctx.edge.0, ctx.edge.1],
            "counts": ctx.counts.iter().map(|(&(a, b), &count)| json!({
                "outcome": [a, b],
                "count": count,
            })).collect::<Vec<_>>(),
            "correlation": sig9(ctx.correlation),
            "correlation_se": sig9(ctx.correlation_se),
            "averages": [sig9(ctx.averages.0), sig9(ctx.averages.1)],
        })).collect::<Vec<_>>(),
        "correlations": empirical.data.correlations().iter().map(|(&(i, j), &v)| json!({
            "i": i, "j": j,
            "value": sig9(v),
            "standard_error": empirical.data.correlation_error(i, j).map(sig9),
        })).collect::<Vec<_>>(),
        "averages": (1..=n).map(|i| json!({
            "i": i,
            "value": empirical.data.average(i).map(sig9),
            "standard_error": empirical.data.average_error(i).map(sig9),
            "exact": sig9(exact[i - 1]),
        })).collect::<Vec<_>>(),
        "cycle_value_estimate": sig9(cycle_estimate),
        "no_signaling_residual": sig9(empirical.no_signaling_residual),
        "no_signaling_anomalous": empirical.no_signaling_anomalous,
    }))
}
