//! `ncycle` command line: analyze scenario and correlation files, compute
//! classical cycle bounds, sample measurements, and write demo inputs.
//!
//! Machine-readable JSON goes to stdout; human-readable summaries go to
//! stderr. Exit codes: 0 success, 2 validation or usage error, 1 internal
//! error.

mod demos;
mod report;
mod schema;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncycle::{estimate_scenario, noncontextual_bound, SampleConfig, SignPattern};

use schema::{parse_input, parse_signs_arg, InputFile};

/// Errors split by exit code.
#[derive(Debug)]
pub enum AppError {
    /// Bad input or usage; exit code 2.
    Usage(String),
    /// Unexpected failure; exit code 1.
    Internal(String),
}

impl AppError {
    pub fn usage(message: impl Into<String>) -> Self {
        AppError::Usage(message.into())
    }

    pub fn internal(message: impl Into<String>) -> Self {
        AppError::Internal(message.into())
    }

    /// Core errors are validation failures by nature.
    pub fn from_core(error: ncycle::Error) -> Self {
        AppError::Usage(error.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "ncycle",
    version,
    about = "Cycle contextuality scenarios: quantum values, classical bounds, violation criteria, sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a scenario file (or a correlation-data file) and print a JSON report
    Analyze {
        /// Scenario or correlation JSON file
        file: PathBuf,
        /// Override the sign pattern, e.g. "+,+,+,-"
        #[arg(long)]
        signs: Option<String>,
        /// Compatibility tolerance on commutator residuals
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Classical bound of a cycle inequality by exhaustive enumeration
    Bounds {
        /// Cycle length (3 to 24)
        #[arg(long)]
        n: usize,
        /// Sign pattern, e.g. "+,+,+,-"
        #[arg(long)]
        signs: String,
    },
    /// Sample per-context measurements from a scenario file with a state
    Sample {
        /// Scenario JSON file including a state block
        file: PathBuf,
        /// Shots per context
        #[arg(long)]
        shots: u64,
        /// Master seed; per-context sub-seeds are derived from it
        #[arg(long)]
        seed: u64,
    },
    /// Write a bundled demo file: chsh, commuting, suppes-zanotti, original-bell
    Demo {
        /// Demo name
        name: String,
        /// Output path (defaults to <name>.json)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<InputFile, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text, &path.display().to_string())
}

fn effective_signs(
    from_flag: Option<&str>,
    from_file: Option<SignPattern>,
    n: usize,
) -> Result<SignPattern, AppError> {
    let signs = match from_flag {
        Some(raw) => parse_signs_arg(raw)?,
        None => match from_file {
            Some(signs) => signs,
            None => SignPattern::single_minus(n),
        },
    };
    if signs.len() != n {
        return Err(AppError::usage(format!(
            "signs: {} entries for a cycle of length {n}",
            signs.len()
        )));
    }
    Ok(signs)
}

fn emit(value: &serde_json::Value) -> Result<(), AppError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::internal(format!("serialize report: {e}")))?;
    println!("{text}");
    Ok(())
}

fn cmd_analyze(file: &Path, signs: Option<&str>, tolerance: Option<f64>) -> Result<(), AppError> {
    match read_input(file)? {
        InputFile::Scenario(scenario_file) => {
            let scenario = scenario_file.to_scenario()?;
            let n = scenario.n();
            let signs = effective_signs(signs, scenario_file.to_signs(n)?, n)?;
            let state = scenario_file.to_state(scenario.dim())?;
            let tolerance = tolerance.unwrap_or(1e-9);
            if tolerance < 0.0 {
                return Err(AppError::usage("tolerance must be nonnegative"));
            }
            let report = report::analyze_scenario(&scenario, &signs, state.as_ref(), tolerance)?;
            emit(&report)?;
            eprintln!(
                "scenario: n={n} dim={} | classical bound {} | supremum {} | violation possible: {}",
                scenario.dim(),
                report["classical_bound"]["bound"],
                report["violation_analysis"]
                    .get("supremum")
                    .unwrap_or(&serde_json::Value::Null),
                report["violation_analysis"]
                    .get("violation_possible")
                    .unwrap_or(&serde_json::Value::Null),
            );
            Ok(())
        }
        InputFile::Correlations(correlation_file) => {
            if signs.is_some() {
                eprintln!("note: --signs is ignored for correlation files");
            }
            let data = correlation_file.to_data()?;
            let report = report::analyze_correlations(correlation_file.n, &data)?;
            emit(&report)?;
            eprintln!(
                "correlations: n={} | joint distribution exists: {}",
                correlation_file.n, report["jpd_exists"]["feasible"]
            );
            Ok(())
        }
    }
}

fn cmd_bounds(n: usize, signs: &str) -> Result<(), AppError> {
    let signs = parse_signs_arg(signs)?;
    if signs.len() != n {
        return Err(AppError::usage(format!(
            "signs: {} entries for n = {n}",
            signs.len()
        )));
    }
    let result = noncontextual_bound(n, &signs).map_err(AppError::from_core)?;
    emit(&serde_json::json!({
        "kind": "bound",
        "n": n,
        "signs": signs.as_slice(),
        "bound": result.bound,
        "assignment": result.assignment,
    }))?;
    eprintln!("classical bound {} at assignment {:?}", result.bound, result.assignment);
    Ok(())
}

fn cmd_sample(file: &Path, shots: u64, seed: u64) -> Result<(), AppError> {
    let scenario_file = match read_input(file)? {
        InputFile::Scenario(f) => f,
        InputFile::Correlations(_) => {
            return Err(AppError::usage(
                "sample needs a scenario file with a state block, not correlation data",
            ))
        }
    };
    let scenario = scenario_file.to_scenario()?;
    let n = scenario.n();
    let signs = effective_signs(None, scenario_file.to_signs(n)?, n)?;
    let state = scenario_file
        .to_state(scenario.dim())?
        .ok_or_else(|| AppError::usage("scenario file has no state block; sampling needs one"))?;
    let config = SampleConfig::new(seed, shots).map_err(AppError::from_core)?;
    let empirical = estimate_scenario(&scenario, &state, &config).map_err(AppError::from_core)?;
    let report = report::sample_report(&scenario, &state, &signs, &empirical)?;
    emit(&report)?;
    eprintln!(
        "sampled {} contexts x {} shots | cycle estimate {} | no-signaling residual {}",
        n, shots, report["cycle_value_estimate"], report["no_signaling_residual"]
    );
    Ok(())
}

fn cmd_demo(name: &str, out: Option<&Path>) -> Result<(), AppError> {
    let value = demos::demo_file(name)?;
    let default_path = PathBuf::from(format!("{name}.json"));
    let path = out.unwrap_or(&default_path);
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| AppError::internal(format!("serialize demo: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| AppError::internal(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Analyze { file, signs, tolerance } => {
            cmd_analyze(&file, signs.as_deref(), tolerance)
        }
        Command::Bounds { n, signs } => cmd_bounds(n, &signs),
        Command::Sample { file, shots, seed } => cmd_sample(&file, shots, seed),
        Command::Demo { name, out } => cmd_demo(&name, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(AppError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(1)
        }
    }
}
