//! Human and JSON renderings of point evaluations and sweep summaries.

use std::fmt::Write as _;

use num_complex::Complex64;
use pwave_core::sweep::{Column, ExtremumKind, SweepResult};
use pwave_core::{find_local_extrema, Tra};
use serde::Serialize;

use crate::config::ResolvedConfig;

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub config: ResolvedConfig,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub flag: String,
    pub z1: [f64; 2],
    pub z2: [f64; 2],
    pub p1: [f64; 2],
    pub p2: [f64; 2],
    pub n_used_odd: u64,
    pub n_used_even: u64,
    pub tail_estimate: f64,
    /// Present when both half-spaces are vacuum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_standing: Option<FreeStanding>,
}

/// `T`, `R` of the general formulas next to the film-only ones.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FreeStanding {
    #[serde(rename = "T_film_only")]
    pub t_film_only: f64,
    #[serde(rename = "R_film_only")]
    pub r_film_only: f64,
    pub max_rel_difference: f64,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

impl PointReport {
    pub fn new(config: ResolvedConfig, res: &Tra) -> Self {
        let p = res.amplitudes;
        let free_standing = (config.eps1 == 1.0 && config.eps2 == [1.0, 0.0]).then(|| {
            let t = (p.p1 - p.p2).norm_sqr() / 4.0;
            let r = (p.p1 + p.p2).norm_sqr() / 4.0;
            FreeStanding {
                t_film_only: t,
                r_film_only: r,
                max_rel_difference: rel(t, res.t).max(rel(r, res.r)),
            }
        });
        Self {
            config,
            t: res.t,
            r: res.r,
            a: res.a,
            flag: res.flag.as_str().to_owned(),
            z1: pair(res.impedance.z1),
            z2: pair(res.impedance.z2),
            p1: pair(p.p1),
            p2: pair(p.p2),
            n_used_odd: res.impedance.n_used_odd,
            n_used_even: res.impedance.n_used_even,
            tail_estimate: res.impedance.tail_estimate,
            free_standing,
        }
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let cx = |z: [f64; 2]| format!("{:.12e} {:+.12e}i", z[0], z[1]);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "material        {} (omega_p = {:e} rad/s, v_F = {:e} cm/s, nu/omega_p = {})",
            c.material, c.omega_p, c.v_f, c.nu_over_omega_p
        );
        let _ = writeln!(
            s,
            "Omega           {}",
            c.omega_over_omega_p.unwrap_or(f64::NAN)
        );
        let _ = writeln!(s, "theta           {} deg", c.theta_deg.unwrap_or(f64::NAN));
        let _ = writeln!(s, "d               {} nm", c.d_nm);
        let _ = writeln!(
            s,
            "eps1, eps2      {}, {} {:+}i",
            c.eps1, c.eps2[0], c.eps2[1]
        );
        let _ = writeln!(s, "beta convention {}", c.beta_convention);
        let _ = writeln!(s, "Z1              {}", cx(self.z1));
        let _ = writeln!(s, "Z2              {}", cx(self.z2));
        let _ = writeln!(s, "p1              {}", cx(self.p1));
        let _ = writeln!(s, "p2              {}", cx(self.p2));
        let _ = writeln!(s, "T               {:.15}", self.t);
        let _ = writeln!(s, "R               {:.15}", self.r);
        let _ = writeln!(s, "A               {:.15}", self.a);
        let _ = writeln!(s, "flag            {}", self.flag);
        let _ = writeln!(
            s,
            "series          n_odd = {}, n_even = {}, tail bound = {:.3e} (rel_tol = {:e})",
            self.n_used_odd, self.n_used_even, self.tail_estimate, c.series.rel_tol
        );
        if let Some(f) = self.free_standing {
            let _ = writeln!(
                s,
                "film only       T = {:.15}, R = {:.15}",
                f.t_film_only, f.r_film_only
            );
            let _ = writeln!(s, "film only diff  {:.3e} relative", f.max_rel_difference);
        }
        s
    }
}

/// Extrema of T, R and A plus failure counts, one item per line.
pub fn sweep_summary(result: &SweepResult) -> String {
    let mut s = String::new();
    let axis = result.spec.axis().name();
    let ok: Vec<_> = result.rows.iter().filter(|r| r.is_ok()).collect();
    let _ = writeln!(
        s,
        "{} points over {axis} in [{}, {}], {} failed",
        result.rows.len(),
        result.spec.start(),
        result.spec.stop(),
        result.rows.len() - ok.len()
    );
    for column in [Column::T, Column::R, Column::A] {
        let name = column.name();
        let best = |better: fn(f64, f64) -> bool| {
            ok.iter().copied().reduce(|a, b| {
                if better(column.of(b), column.of(a)) {
                    b
                } else {
                    a
                }
            })
        };
        if let (Some(lo), Some(hi)) = (best(|x, y| x < y), best(|x, y| x > y)) {
            let _ = writeln!(
                s,
                "{name}: min {:.6e} at {axis} = {}, max {:.6e} at {axis} = {}",
                column.of(lo),
                lo.axis_value,
                column.of(hi),
                hi.axis_value
            );
        }
        let extrema = find_local_extrema(result, column);
        let count = |k: ExtremumKind| extrema.iter().filter(|e| e.kind == k).count();
        let _ = writeln!(
            s,
            "{name}: {} local maxima, {} local minima",
            count(ExtremumKind::Maximum),
            count(ExtremumKind::Minimum)
        );
        for e in extrema.iter().take(12) {
            let kind = if e.kind == ExtremumKind::Maximum {
                "max"
            } else {
                "min"
            };
            let _ = writeln!(s, "  {kind} {:.6e} at {axis} = {}", e.value, e.axis_value);
        }
        if extrema.len() > 12 {
            let _ = writeln!(s, "  ... {} more", extrema.len() - 12);
        }
    }
    s
}
