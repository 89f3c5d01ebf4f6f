//! On-disk JSON formats and their validation into core types.
//!
//! Two input kinds exist: scenario files (observables, optional signs and
//! state) and correlation-data files (numbers only, for the classical
//! checks). Complex numbers are `[re, im]` pairs; observable indices are
//! 1-based. Input files carry full-precision floats; reports round to nine
//! significant digits.

use ncycle::{
    Complex64, CorrelationData64, CycleScenario, HermitianObservable, Matrix64, Observable64,
    QuantumState, Scenario64, SignPattern, State64,
};
use serde::{Deserialize, Serialize};

use crate::AppError;

/// A scenario file: the cycle observables plus optional signs and state.
#[derive(Debug, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub n: usize,
    pub observables: Vec<ObservableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateBlock>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ObservableEntry {
    pub label: String,
    pub dim: usize,
    /// Row-major `[re, im]` pairs, `dim * dim` of them.
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateBlock {
    /// `"pure"` (amplitude vector) or `"density"` (row-major matrix).
    pub kind: String,
    pub entries: Vec<[f64; 2]>,
}

/// A correlation-data file for the classical checks.
#[derive(Debug, Serialize, Deserialize)]
pub struct CorrelationFile {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub averages: Option<Vec<Option<f64>>>,
    pub correlations: Vec<CorrelationEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// Either kind of input file.
pub enum InputFile {
    Scenario(ScenarioFile),
    Correlations(CorrelationFile),
}

pub fn parse_input(text: &str, path: &str) -> Result<InputFile, AppError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| AppError::usage(format!("{path}: malformed JSON: {e}")))?;
    let object = value
        .as_object()
        .ok_or_else(|| AppError::usage(format!("{path}: top level must be a JSON object")))?;
    if object.contains_key("observables") {
        let file: ScenarioFile = serde_json::from_value(value.clone())
            .map_err(|e| AppError::usage(format!("{path}: invalid scenario file: {e}")))?;
        Ok(InputFile::Scenario(file))
    } else if object.contains_key("correlations") {
        let file: CorrelationFile = serde_json::from_value(value.clone())
            .map_err(|e| AppError::usage(format!("{path}: invalid correlation file: {e}")))?;
        if file.kind != "correlations" {
            return Err(AppError::usage(format!(
                "{path}: field 'kind' must be \"correlations\", got {:?}",
                file.kind
            )));
        }
        Ok(InputFile::Correlations(file))
    } else {
        Err(AppError::usage(format!(
            "{path}: expected a scenario file (field 'observables') or a correlation file (field 'correlations')"
        )))
    }
}

fn complex_entries(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

impl ScenarioFile {
    /// Validates into a core scenario; error messages name the offending
    /// field.
    pub fn to_scenario(&self) -> Result<Scenario64, AppError> {
        if self.n != self.observables.len() {
            return Err(AppError::usage(format!(
                "n: declared {} but 'observables' holds {}",
                self.n,
                self.observables.len()
            )));
        }
        let mut observables: Vec<Observable64> = Vec::with_capacity(self.observables.len());
        for (index, entry) in self.observables.iter().enumerate() {
            let matrix = Matrix64::new(entry.dim, complex_entries(&entry.entries))
                .map_err(|e| AppError::usage(format!("observables[{index}].entries: {e}")))?;
            let observable = HermitianObservable::dichotomous(entry.label.clone(), matrix)
                .map_err(|e| AppError::usage(format!("observables[{index}]: {e}")))?;
            observables.push(observable);
        }
        CycleScenario::new(observables).map_err(|e| AppError::usage(format!("observables: {e}")))
    }

    pub fn to_signs(&self, n: usize) -> Result<Option<SignPattern>, AppError> {
        match &self.signs {
            None => Ok(None),
            Some(raw) => {
                if raw.len() != n {
                    return Err(AppError::usage(format!(
                        "signs: {} entries for a cycle of length {n}",
                        raw.len()
                    )));
                }
                SignPattern::new(raw.clone())
                    .map(Some)
                    .map_err(|e| AppError::usage(format!("signs: {e}")))
            }
        }
    }

    pub fn to_state(&self, dim: usize) -> Result<Option<State64>, AppError> {
        let block = match &self.state {
            None => return Ok(None),
            Some(block) => block,
        };
        let entries = complex_entries(&block.entries);
        let state = match block.kind.as_str() {
            "pure" => {
                if entries.len() != dim {
                    return Err(AppError::usage(format!(
                        "state.entries: {} amplitudes for dimension {dim}",
                        entries.len()
                    )));
                }
                QuantumState::pure(&entries)
                    .map_err(|e| AppError::usage(format!("state: {e}")))?
            }
            "density" => {
                let matrix = Matrix64::new(dim, entries)
                    .map_err(|e| AppError::usage(format!("state.entries: {e}")))?;
                QuantumState::density(matrix)
                    .map_err(|e| AppError::usage(format!("state: {e}")))?
            }
            other => {
                return Err(AppError::usage(format!(
                    "state.kind: expected \"pure\" or \"density\", got {other:?}"
                )))
            }
        };
        Ok(Some(state))
    }
}

impl CorrelationFile {
    pub fn to_data(&self) -> Result<CorrelationData64, AppError> {
        let mut data = CorrelationData64::new(self.n);
        if let Some(averages) = &self.averages {
            if averages.len() != self.n {
                return Err(AppError::usage(format!(
                    "averages: {} entries for n = {}",
                    averages.len(),
                    self.n
                )));
            }
            for (i, value) in averages.iter().enumerate() {
                if let Some(v) = value {
                    data.set_average(i + 1, *v)
                        .map_err(|e| AppError::usage(format!("averages[{i}]: {e}")))?;
                }
            }
        }
        for (index, entry) in self.correlations.iter().enumerate() {
            data.set_correlation(entry.i, entry.j, entry.value)
                .map_err(|e| AppError::usage(format!("correlations[{index}]: {e}")))?;
        }
        Ok(data)
    }
}

/// Serializes an observable back to its file form.
pub fn observable_entry(observable: &Observable64) -> ObservableEntry {
    ObservableEntry {
        label: observable.label().to_string(),
        dim: observable.dim(),
        entries: observable
            .matrix()
            .entries()
            .iter()
            .map(|z| [z.re, z.im])
            .collect(),
    }
}

/// Parses a `--signs` argument like `+,+,+,-` or `1,-1,1`.
pub fn parse_signs_arg(raw: &str) -> Result<SignPattern, AppError> {
    let mut signs = Vec::new();
    for token in raw.split(',') {
        match token.trim() {
            "+" | "+1" | "1" => signs.push(1),
            "-" | "-1" => signs.push(-1),
            other => {
                return Err(AppError::usage(format!(
                    "signs: expected '+' or '-' entries, got {other:?}"
                )))
            }
        }
    }
    SignPattern::new(signs).map_err(|e| AppError::usage(format!("signs: {e}")))
}
