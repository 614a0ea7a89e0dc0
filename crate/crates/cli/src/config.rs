//! JSON run configuration and its resolution into solver inputs.
//!
//! Configs use external units: thickness in nm, angles in degrees, the
//! collision rate either as `nu_over_omega_p` or as `nu` in rad/s. A config
//! describes either one point (`omega_over_omega_p` and `theta_deg`) or one
//! sweep (`axis`, `start`, `stop`, `count`), never both.

use std::fmt;
use std::path::Path;

use pwave_core::dielectric::{SODIUM_FERMI_VELOCITY, SODIUM_PLASMA_FREQUENCY};
use pwave_core::sweep::{PointParams, SweepAxis, SweepSpec};
use pwave_core::{BetaConvention, Complex64, Plasma, SeriesControl, Stack};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Permittivity {
    Real(f64),
    /// `[re, im]`
    Complex([f64; 2]),
}

impl Permittivity {
    pub fn value(self) -> Complex64 {
        match self {
            Permittivity::Real(x) => Complex64::new(x, 0.0),
            Permittivity::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_n_max")]
    pub n_max: u64,
    #[serde(default = "default_consecutive")]
    pub consecutive_below: u32,
}

fn default_rel_tol() -> f64 {
    SeriesControl::default().rel_tol()
}

fn default_n_max() -> u64 {
    SeriesControl::default().n_max()
}

fn default_consecutive() -> u32 {
    SeriesControl::default().consecutive_below()
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
            n_max: default_n_max(),
            consecutive_below: default_consecutive(),
        }
    }
}

/// The config file as written by the user.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    /// rad/s
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_p: Option<f64>,
    /// cm/s
    #[serde(default, rename = "v_F", skip_serializing_if = "Option::is_none")]
    pub v_f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_over_omega_p: Option<f64>,
    /// rad/s
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps2: Option<Permittivity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_over_omega_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_convention: Option<String>,
}

/// Fully specified inputs, echoed into every output artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub material: String,
    pub omega_p: f64,
    #[serde(rename = "v_F")]
    pub v_f: f64,
    pub nu_over_omega_p: f64,
    pub eps1: f64,
    pub eps2: [f64; 2],
    pub d_nm: f64,
    /// Absent for the swept parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_over_omega_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepEcho>,
    pub series: SeriesConfig,
    pub beta_convention: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEcho {
    pub axis: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Point { omega: f64 },
    Sweep(SweepSpec),
}

/// Solver inputs plus the echo of how they were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub stack: Stack,
    pub plasma: Plasma,
    pub series: SeriesControl,
    pub mode: Mode,
    pub echo: ResolvedConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config field `{}`: {}", self.field, self.reason)
    }
}

fn err<T>(field: &str, reason: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(ConfigError {
        field: field.to_owned(),
        reason: reason.into(),
    }))
}

fn require<T>(value: Option<T>, field: &str, why: &str) -> Result<T, CliError> {
    match value {
        Some(v) => Ok(v),
        None => err(field, format!("missing ({why})")),
    }
}

/// Maps solver parameter names onto config keys.
fn external_field(core: &str) -> &str {
    match core {
        "theta" => "theta_deg",
        other => other,
    }
}

/// Input errors from the solver become config errors naming the key.
pub(crate) fn config_from_core(e: pwave_core::Error) -> CliError {
    match e.root() {
        pwave_core::Error::InvalidParameter { field, reason } => CliError::Config(ConfigError {
            field: external_field(field).to_owned(),
            reason: reason.clone(),
        }),
        _ => CliError::Numerical(e),
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Config(ConfigError {
                field: unknown_field_name(&e.to_string()).unwrap_or_else(|| "<document>".into()),
                reason: e.to_string(),
            })
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    fn plasma(&self) -> Result<(String, Plasma, f64), CliError> {
        let (material, omega_p, v_f) = match (&self.material, self.omega_p, self.v_f) {
            (Some(m), None, None) => match m.to_ascii_lowercase().as_str() {
                "sodium" | "na" => (
                    "sodium".to_owned(),
                    SODIUM_PLASMA_FREQUENCY,
                    SODIUM_FERMI_VELOCITY,
                ),
                other => {
                    return err(
                        "material",
                        format!("unknown material `{other}`; built in: sodium"),
                    )
                }
            },
            (None, Some(wp), Some(vf)) => ("custom".to_owned(), wp, vf),
            (None, None, None) => {
                return err(
                    "material",
                    "missing: give `material` or both `omega_p` and `v_F`",
                )
            }
            (Some(_), _, _) => {
                return err(
                    "material",
                    "give either `material` or `omega_p` and `v_F`, not both",
                )
            }
            (None, _, _) => return err("omega_p", "`omega_p` and `v_F` must be given together"),
        };
        let ratio = match (self.nu_over_omega_p, self.nu) {
            (Some(r), None) => r,
            (None, Some(nu)) => nu / omega_p,
            (None, None) => {
                return err("nu_over_omega_p", "missing: give `nu_over_omega_p` or `nu`")
            }
            (Some(_), Some(_)) => {
                return err("nu", "give either `nu_over_omega_p` or `nu`, not both")
            }
        };
        let plasma = Plasma::with_collision_ratio(omega_p, v_f, ratio).map_err(config_from_core)?;
        Ok((material, plasma, ratio))
    }

    /// Checks every key and builds the solver inputs.
    pub fn resolve(&self) -> Result<Run, CliError> {
        let (material, plasma, ratio) = self.plasma()?;
        let series_cfg = self.series.unwrap_or_default();
        let series = SeriesControl::new(
            series_cfg.rel_tol,
            series_cfg.n_max,
            series_cfg.consecutive_below,
        )
        .map_err(config_from_core)?;
        let convention: BetaConvention = match &self.beta_convention {
            Some(s) => s.parse().map_err(config_from_core)?,
            None => BetaConvention::default(),
        };
        let eps1 = require(self.eps1, "eps1", "permittivity of the incidence medium")?;
        let eps2 = require(self.eps2, "eps2", "substrate permittivity")?.value();
        let d_nm = require(self.d_nm, "d_nm", "film thickness in nm")?;

        let sweep_keys = [
            self.axis.is_some(),
            self.start.is_some(),
            self.stop.is_some(),
            self.count.is_some(),
        ];
        let is_sweep = sweep_keys.iter().any(|&k| k);
        let axis = if is_sweep {
            if !sweep_keys.iter().all(|&k| k) {
                return err(
                    "axis",
                    "sweep mode needs all of `axis`, `start`, `stop` and `count`",
                );
            }
            let axis: SweepAxis = self
                .axis
                .as_deref()
                .unwrap_or_default()
                .parse()
                .map_err(config_from_core)?;
            Some(axis)
        } else {
            None
        };
        let swept = |a: SweepAxis| axis == Some(a);

        let theta_deg = match (self.theta_deg, swept(SweepAxis::Theta)) {
            (Some(_), true) => {
                return err(
                    "theta_deg",
                    "is the swept axis; remove it or sweep another axis",
                )
            }
            (None, true) => 0.0,
            (Some(t), false) => t,
            (None, false) => return err("theta_deg", "missing (incidence angle in degrees)"),
        };
        let omega = match (self.omega_over_omega_p, swept(SweepAxis::Omega)) {
            (Some(_), true) => {
                return err(
                    "omega_over_omega_p",
                    "is the swept axis; remove it or sweep another axis",
                )
            }
            (None, true) => 1.0,
            (Some(w), false) => w,
            (None, false) => {
                return err(
                    "omega_over_omega_p",
                    "missing (frequency in units of omega_p)",
                )
            }
        };
        if !(0.0..90.0).contains(&theta_deg) {
            return err(
                "theta_deg",
                format!("must lie in [0, 90) degrees, got {theta_deg}"),
            );
        }
        if !(omega.is_finite() && omega > 0.0) {
            return err(
                "omega_over_omega_p",
                format!("must be finite and > 0, got {omega}"),
            );
        }
        let stack = Stack::new(d_nm, eps1, eps2, theta_deg.to_radians())
            .map_err(config_from_core)?
            .with_beta_convention(convention);

        let mode = match axis {
            None => Mode::Point { omega },
            Some(axis) => {
                let fixed = PointParams {
                    stack,
                    omega,
                    plasma,
                    series,
                };
                let spec = SweepSpec::new(
                    axis,
                    self.start.unwrap_or_default(),
                    self.stop.unwrap_or_default(),
                    self.count.unwrap_or_default(),
                    fixed,
                )
                .map_err(config_from_core)?;
                Mode::Sweep(spec)
            }
        };
        let echo = ResolvedConfig {
            material,
            omega_p: plasma.omega_p(),
            v_f: plasma.fermi_velocity(),
            nu_over_omega_p: ratio,
            eps1,
            eps2: [eps2.re, eps2.im],
            d_nm,
            theta_deg: (!swept(SweepAxis::Theta)).then_some(theta_deg),
            omega_over_omega_p: (!swept(SweepAxis::Omega)).then_some(omega),
            sweep: match mode {
                Mode::Sweep(spec) => Some(SweepEcho {
                    axis: spec.axis().name().to_owned(),
                    start: spec.start(),
                    stop: spec.stop(),
                    count: spec.count(),
                }),
                Mode::Point { .. } => None,
            },
            series: series_cfg,
            beta_convention: convention.name().to_owned(),
        };
        Ok(Run {
            stack,
            plasma,
            series,
            mode,
            echo,
        })
    }
}

/// Pulls the offending key out of serde's "unknown field" message.
fn unknown_field_name(message: &str) -> Option<String> {
    let rest = message.strip_prefix("unknown field `")?;
    Some(rest[..rest.find('`')?].to_owned())
}

/// Config equivalent of a named preset scan.
pub fn preset_config(name: &str) -> Result<RunConfig, CliError> {
    let p = pwave_core::presets::find_preset(name).map_err(config_from_core)?;
    let mut cfg = RunConfig {
        material: Some("sodium".into()),
        nu_over_omega_p: Some(pwave_core::presets::PRESET_COLLISION_RATIO),
        eps1: Some(p.eps1),
        eps2: Some(Permittivity::Real(p.eps2)),
        d_nm: Some(p.d_nm),
        theta_deg: Some(p.theta_deg),
        omega_over_omega_p: Some(p.omega),
        axis: Some(p.axis.name().to_owned()),
        start: Some(p.start),
        stop: Some(p.stop),
        count: Some(p.count),
        ..Default::default()
    };
    match p.axis {
        SweepAxis::Theta => cfg.theta_deg = None,
        SweepAxis::Omega => cfg.omega_over_omega_p = None,
        _ => {}
    }
    Ok(cfg)
}
