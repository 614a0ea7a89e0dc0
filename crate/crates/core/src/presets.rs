//! Named sodium-film configurations used by validation, acceptance runs
//! and the command line.

use crate::error::{Error, Result};
use crate::impedance::SeriesControl;
use crate::sweep::{PointParams, SweepAxis, SweepSpec};
use crate::{Plasma, Stack};

/// Collision rate `nu / omega_p` shared by every preset.
pub const PRESET_COLLISION_RATIO: f64 = 1e-3;

/// A stack plus the scan that characterises it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub d_nm: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// Fixed angle in degrees; ignored when `axis` is `Theta`.
    pub theta_deg: f64,
    /// Fixed `Omega`; ignored when `axis` is `Omega`.
    pub omega: f64,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

pub const PRESETS: [Preset; 6] = [
    Preset {
        name: "air_film_glass_1nm",
        description: "air / 1 nm film / glass, 75 deg, frequency scan",
        d_nm: 1.0,
        eps1: 1.0,
        eps2: 4.0,
        theta_deg: 75.0,
        omega: 1.0,
        axis: SweepAxis::Omega,
        start: 0.05,
        stop: 1.5,
        count: 500,
    },
    Preset {
        name: "air_film_glass_2nm",
        description: "air / 2 nm film / glass, 75 deg, frequency scan",
        d_nm: 2.0,
        eps1: 1.0,
        eps2: 4.0,
        theta_deg: 75.0,
        omega: 1.0,
        axis: SweepAxis::Omega,
        start: 0.05,
        stop: 1.5,
        count: 500,
    },
    Preset {
        name: "air_film_glass_5nm",
        description: "air / 5 nm film / glass, 75 deg, frequency scan",
        d_nm: 5.0,
        eps1: 1.0,
        eps2: 4.0,
        theta_deg: 75.0,
        omega: 1.0,
        axis: SweepAxis::Omega,
        start: 0.05,
        stop: 1.5,
        count: 500,
    },
    Preset {
        name: "glass_film_air_angle",
        description: "glass / 10 nm film / air at Omega = 1, angle scan",
        d_nm: 10.0,
        eps1: 4.0,
        eps2: 1.0,
        theta_deg: 0.0,
        omega: 1.0,
        axis: SweepAxis::Theta,
        start: 0.0,
        stop: 89.5,
        count: 180,
    },
    Preset {
        name: "mica_film_air_100nm",
        description: "mica / 100 nm film / air, 15 deg, frequency scan",
        d_nm: 100.0,
        eps1: 8.0,
        eps2: 1.0,
        theta_deg: 15.0,
        omega: 1.0,
        axis: SweepAxis::Omega,
        start: 0.05,
        stop: 1.5,
        count: 500,
    },
    Preset {
        name: "mica_film_air_comb",
        description: "mica / 10 nm film / air, 15 deg, scan across 1.4 <= Omega <= 1.53",
        d_nm: 10.0,
        eps1: 8.0,
        eps2: 1.0,
        theta_deg: 15.0,
        omega: 1.0,
        axis: SweepAxis::Omega,
        start: 1.4,
        stop: 1.53,
        count: 651,
    },
];

pub fn find_preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let known: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        Error::invalid(
            "preset",
            format!("unknown preset {name:?}; known: {}", known.join(", ")),
        )
    })
}

impl Preset {
    pub fn stack(&self) -> Result<Stack> {
        Stack::from_degrees(self.d_nm, self.eps1, self.eps2, self.theta_deg)
    }

    pub fn plasma(&self) -> Plasma {
        Plasma::sodium(PRESET_COLLISION_RATIO).expect("sodium preset is valid")
    }

    /// The preset scan with `count` points.
    pub fn sweep(&self, count: usize, series: SeriesControl) -> Result<SweepSpec> {
        let fixed = PointParams {
            stack: self.stack()?,
            omega: self.omega,
            plasma: self.plasma(),
            series,
        };
        SweepSpec::new(self.axis, self.start, self.stop, count, fixed)
    }

    /// The preset scan at its default density.
    pub fn default_sweep(&self) -> Result<SweepSpec> {
        self.sweep(self.count, SeriesControl::default())
    }
}
