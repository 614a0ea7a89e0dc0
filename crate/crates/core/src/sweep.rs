//! One-dimensional parameter scans over [`evaluate_point`].

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::impedance::SeriesControl;
use crate::optics::{evaluate_point, PointFlag};
use crate::{Plasma, Stack};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// `omega / omega_p`.
    Omega,
    /// Incidence angle, degrees.
    Theta,
    /// Film thickness, nm.
    Thickness,
    Eps1,
    /// Real substrate permittivity.
    Eps2,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Omega => "omega",
            SweepAxis::Theta => "theta",
            SweepAxis::Thickness => "d",
            SweepAxis::Eps1 => "eps1",
            SweepAxis::Eps2 => "eps2",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omega" | "omega_over_omega_p" => Ok(SweepAxis::Omega),
            "theta" | "theta_deg" => Ok(SweepAxis::Theta),
            "d" | "d_nm" | "thickness" => Ok(SweepAxis::Thickness),
            "eps1" => Ok(SweepAxis::Eps1),
            "eps2" => Ok(SweepAxis::Eps2),
            other => Err(Error::invalid(
                "axis",
                format!("unknown axis `{other}` (expected omega, theta, d, eps1 or eps2)"),
            )),
        }
    }
}

/// Everything needed to evaluate one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointParams {
    pub stack: Stack,
    pub omega: f64,
    pub plasma: Plasma,
    pub series: SeriesControl,
}

/// A uniform scan of one axis with all other parameters fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    axis: SweepAxis,
    start: f64,
    stop: f64,
    count: usize,
    fixed: PointParams,
}

impl SweepSpec {
    /// `start`/`stop` are in axis units (theta in degrees, d in nm). The
    /// value of the swept parameter inside `fixed` is ignored.
    pub fn new(
        axis: SweepAxis,
        start: f64,
        stop: f64,
        count: usize,
        fixed: PointParams,
    ) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid(
                "count",
                format!("must be >= 2, got {count}"),
            ));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::invalid(
                "start",
                format!("need finite start < stop, got {start} .. {stop}"),
            ));
        }
        let positive = |field: &'static str| {
            if start > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(
                    field,
                    format!("sweep must stay > 0, got start = {start}"),
                ))
            }
        };
        match axis {
            SweepAxis::Omega => positive("start")?,
            SweepAxis::Thickness => positive("start")?,
            SweepAxis::Eps1 => positive("start")?,
            SweepAxis::Theta => {
                if start < 0.0 || stop >= 90.0 {
                    return Err(Error::invalid(
                        "theta",
                        format!("sweep must lie in [0, 90) degrees, got {start} .. {stop}"),
                    ));
                }
            }
            SweepAxis::Eps2 => {}
        }
        Ok(Self {
            axis,
            start,
            stop,
            count,
            fixed,
        })
    }

    pub fn axis(&self) -> SweepAxis {
        self.axis
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn fixed(&self) -> &PointParams {
        &self.fixed
    }

    /// `start + i (stop - start) / (count - 1)`, with the last point pinned to `stop`.
    pub fn grid_value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + i as f64 * (self.stop - self.start) / (self.count - 1) as f64
    }

    /// Stack and frequency at axis value `x`.
    pub fn point_at(&self, x: f64) -> Result<(Stack, f64)> {
        let base = self.fixed.stack;
        let omega = self.fixed.omega;
        Ok(match self.axis {
            SweepAxis::Omega => (base, x),
            SweepAxis::Theta => (base.with_theta(x.to_radians())?, omega),
            SweepAxis::Thickness => (base.with_thickness(x)?, omega),
            SweepAxis::Eps1 => (base.with_eps1(x)?, omega),
            SweepAxis::Eps2 => (base.with_eps2(Complex::new(x, 0.0))?, omega),
        })
    }
}

/// Outcome of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok(PointFlag),
    Failed { kind: &'static str, message: String },
}

impl RowStatus {
    /// Text stored in the `flag` column.
    pub fn label(&self) -> String {
        match self {
            RowStatus::Ok(flag) => flag.as_str().to_owned(),
            RowStatus::Failed { kind, .. } => format!("error:{kind}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub t: f64,
    pub r: f64,
    pub a: f64,
    pub z1: Complex<f64>,
    pub z2: Complex<f64>,
    pub n_odd: u64,
    pub n_even: u64,
    pub status: RowStatus,
}

impl SweepRow {
    fn evaluate(spec: &SweepSpec, axis_value: f64) -> Self {
        let p = &spec.fixed;
        let outcome = spec
            .point_at(axis_value)
            .and_then(|(stack, omega)| evaluate_point(&stack, omega, &p.plasma, &p.series));
        match outcome {
            Ok(res) => SweepRow {
                axis_value,
                t: res.t,
                r: res.r,
                a: res.a,
                z1: res.impedance.z1,
                z2: res.impedance.z2,
                n_odd: res.impedance.n_used_odd,
                n_even: res.impedance.n_used_even,
                status: RowStatus::Ok(res.flag),
            },
            Err(e) => SweepRow {
                axis_value,
                t: f64::NAN,
                r: f64::NAN,
                a: f64::NAN,
                z1: Complex::new(f64::NAN, f64::NAN),
                z2: Complex::new(f64::NAN, f64::NAN),
                n_odd: 0,
                n_even: 0,
                status: RowStatus::Failed {
                    kind: e.kind(),
                    message: e.to_string(),
                },
            },
        }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self.status, RowStatus::Ok(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetadata {
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch when the sweep finished.
    pub unix_time: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    /// Global rayon pool.
    #[default]
    Parallel,
    /// Dedicated pool with this many workers.
    ParallelWith(usize),
}

/// Evaluates every grid point. Per-point failures are recorded in the
/// row status; only pool construction can fail here.
pub fn run_sweep(spec: &SweepSpec, execution: Execution) -> Result<SweepResult> {
    let eval = |i: usize| SweepRow::evaluate(spec, spec.grid_value(i));
    let rows: Vec<SweepRow> = match execution {
        Execution::Serial => (0..spec.count).map(eval).collect(),
        Execution::Parallel => (0..spec.count).into_par_iter().map(eval).collect(),
        Execution::ParallelWith(threads) => {
            if threads == 0 {
                return Err(Error::invalid("threads", "must be >= 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::invalid("threads", e.to_string()))?;
            pool.install(|| (0..spec.count).into_par_iter().map(eval).collect())
        }
    };
    let unix_time = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(SweepResult {
        spec: *spec,
        rows,
        metadata: SweepMetadata {
            tool_version: env!("CARGO_PKG_VERSION"),
            unix_time,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    T,
    R,
    A,
}

impl Column {
    pub fn of(self, row: &SweepRow) -> f64 {
        match self {
            Column::T => row.t,
            Column::R => row.r,
            Column::A => row.a,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Column::T => "T",
            Column::R => "R",
            Column::A => "A",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub axis_value: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Interior strict local extrema of `values` by neighbour comparison. A
/// plateau counts once, at its left edge; NaN never qualifies.
pub fn local_extrema(values: &[f64]) -> Vec<(usize, ExtremumKind)> {
    let mut out = Vec::new();
    if values.len() < 3 {
        return out;
    }
    let mut i = 1;
    while i + 1 < values.len() {
        let v = values[i];
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == v {
            j += 1;
        }
        if j + 1 == values.len() {
            break;
        }
        let (left, right) = (values[i - 1], values[j + 1]);
        if left < v && right < v {
            out.push((i, ExtremumKind::Maximum));
        } else if left > v && right > v {
            out.push((i, ExtremumKind::Minimum));
        }
        i = j + 1;
    }
    out
}

pub fn find_local_extrema(result: &SweepResult, column: Column) -> Vec<Extremum> {
    let values: Vec<f64> = result.rows.iter().map(|r| column.of(r)).collect();
    local_extrema(&values)
        .into_iter()
        .map(|(index, kind)| Extremum {
            index,
            axis_value: result.rows[index].axis_value,
            value: values[index],
            kind,
        })
        .collect()
}
