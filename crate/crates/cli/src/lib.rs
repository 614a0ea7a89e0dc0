//! Command-line front end for the thin-film solver: point evaluations,
//! sweeps written as CSV, and the built-in validation suite.

pub mod config;
pub mod csv_io;
pub mod plot;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};

use pwave_core::sweep::{Column, ExtremumKind, SweepResult};
use pwave_core::validation::{run_validation, ValidationOptions, ValidationReport};
use pwave_core::{evaluate_point, find_local_extrema, run_sweep, Execution, SeriesControl};
use serde::Serialize;

use config::{config_from_core, Mode, ResolvedConfig, Run};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(config::ConfigError),
    Numerical(pwave_core::Error),
    Io {
        path: String,
        source: std::io::Error,
    },
    Csv(String),
    Usage(String),
    ValidationFailed(Vec<String>),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailed(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Config(_) | CliError::Io { .. } | CliError::Csv(_) | CliError::Usage(_) => {
                EXIT_CONFIG
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Numerical(e) => write!(f, "numerical error: {e}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Csv(e) => write!(f, "csv: {e}"),
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::ValidationFailed(names) => {
                write!(f, "validation failed: {}", names.join(", "))
            }
        }
    }
}

impl std::error::Error for CliError {}

pub fn execution(threads: Option<usize>) -> Execution {
    match threads {
        Some(n) => Execution::ParallelWith(n),
        None => Execution::Parallel,
    }
}

fn expect_point(run: &Run) -> Result<f64, CliError> {
    match run.mode {
        Mode::Point { omega } => Ok(omega),
        Mode::Sweep(_) => Err(CliError::Usage(
            "config describes a sweep (axis/start/stop/count); use `pwave sweep`".into(),
        )),
    }
}

/// Evaluates one point and renders it as text or JSON.
pub fn cmd_point(run: &Run, json: bool) -> Result<String, CliError> {
    let omega = expect_point(run)?;
    let res =
        evaluate_point(&run.stack, omega, &run.plasma, &run.series).map_err(config_from_core)?;
    let report = report::PointReport::new(run.echo.clone(), &res);
    if json {
        Ok(serde_json::to_string_pretty(&report).expect("report serializes") + "\n")
    } else {
        Ok(report.to_text())
    }
}

#[derive(Debug, Serialize)]
struct ExtremumJson {
    kind: &'static str,
    axis_value: f64,
    value: f64,
}

#[derive(Debug, Serialize)]
struct SweepSummaryJson<'a> {
    config: &'a ResolvedConfig,
    csv: String,
    meta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    plot_script: Option<String>,
    rows: usize,
    failed_rows: usize,
    extrema: std::collections::BTreeMap<&'static str, Vec<ExtremumJson>>,
}

pub struct SweepOutput {
    pub result: SweepResult,
    pub summary: String,
    pub csv: PathBuf,
    pub plot_script: Option<PathBuf>,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// Runs the sweep, writes the CSV, its metadata sidecar and optionally a
/// plot script, and returns the summary for standard output.
pub fn cmd_sweep(
    run: &Run,
    out: &Path,
    plot_script: bool,
    threads: Option<usize>,
    json: bool,
) -> Result<SweepOutput, CliError> {
    let Mode::Sweep(spec) = run.mode else {
        return Err(CliError::Usage(
            "config describes a single point; add axis/start/stop/count or use `pwave point`"
                .into(),
        ));
    };
    let result = run_sweep(&spec, execution(threads)).map_err(config_from_core)?;
    write_file(out, &csv_io::to_bytes(&result.rows)?)?;
    let meta = csv_io::SweepMeta::new(&result, &run.echo);
    let meta_path = csv_io::meta_path(out);
    write_file(
        &meta_path,
        (serde_json::to_string_pretty(&meta).expect("meta serializes") + "\n").as_bytes(),
    )?;
    let script = if plot_script {
        let path = plot::script_path(out);
        write_file(&path, plot::matplotlib_script(out, &run.echo).as_bytes())?;
        Some(path)
    } else {
        None
    };
    let summary = if json {
        let extrema = [Column::T, Column::R, Column::A]
            .into_iter()
            .map(|c| {
                let list = find_local_extrema(&result, c)
                    .into_iter()
                    .map(|e| ExtremumJson {
                        kind: if e.kind == ExtremumKind::Maximum {
                            "max"
                        } else {
                            "min"
                        },
                        axis_value: e.axis_value,
                        value: e.value,
                    })
                    .collect();
                (c.name(), list)
            })
            .collect();
        let s = SweepSummaryJson {
            config: &run.echo,
            csv: out.display().to_string(),
            meta: meta_path.display().to_string(),
            plot_script: script.as_ref().map(|p| p.display().to_string()),
            rows: meta.rows,
            failed_rows: meta.failed_rows,
            extrema,
        };
        serde_json::to_string_pretty(&s).expect("summary serializes") + "\n"
    } else {
        let mut s = report::sweep_summary(&result);
        s.push_str(&format!(
            "wrote {} and {}\n",
            out.display(),
            meta_path.display()
        ));
        if let Some(p) = &script {
            s.push_str(&format!("wrote {}\n", p.display()));
        }
        s
    };
    Ok(SweepOutput {
        result,
        summary,
        csv: out.to_path_buf(),
        plot_script: script,
    })
}

pub fn validation_options(
    rel_tol: Option<f64>,
    threads: Option<usize>,
) -> Result<ValidationOptions, CliError> {
    let mut opts = ValidationOptions {
        execution: execution(threads),
        ..Default::default()
    };
    if let Some(tol) = rel_tol {
        let d = SeriesControl::default();
        opts.series =
            SeriesControl::new(tol, d.n_max(), d.consecutive_below()).map_err(config_from_core)?;
    }
    Ok(opts)
}

pub fn render_validation(report: &ValidationReport, json: bool) -> String {
    if json {
        #[derive(Serialize)]
        struct CheckJson<'a> {
            name: &'a str,
            passed: bool,
            observed: f64,
            tolerance: f64,
            detail: &'a str,
        }
        let checks: Vec<_> = report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name,
                passed: c.passed,
                observed: c.observed,
                tolerance: c.tolerance,
                detail: &c.detail,
            })
            .collect();
        let body = serde_json::json!({ "passed": report.all_passed(), "checks": checks });
        serde_json::to_string_pretty(&body).expect("report serializes") + "\n"
    } else {
        let mut s: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
        let failed = report.failures().count();
        s.push_str(&format!(
            "{} of {} checks passed\n",
            report.checks.len() - failed,
            report.checks.len()
        ));
        s
    }
}

/// Runs the suite; a failed check turns into [`CliError::ValidationFailed`]
/// after the report has been produced.
pub fn cmd_validate(opts: &ValidationOptions, json: bool) -> (String, Result<(), CliError>) {
    let report = run_validation(opts);
    let text = render_validation(&report, json);
    let failures: Vec<String> = report.failures().map(|c| c.name.to_owned()).collect();
    if failures.is_empty() {
        (text, Ok(()))
    } else {
        (text, Err(CliError::ValidationFailed(failures)))
    }
}
