//! Independent reference routes for validating the production path.
//!
//! * [`impedance_bruteforce`] sums the raw mode summand to a fixed cutoff
//!   in double-double arithmetic and removes the `1/N` truncation bias by
//!   Richardson extrapolation over `N/4`, `N/2`, `N`. It shares only the
//!   summand with the production sum, not the asymptotic subtraction.
//! * [`tra_via_eq9_eq11`] evaluates `T` and `R` in their unscaled form with
//!   explicit `sqrt(eps2 - eps1 sin^2 theta)` and `sqrt(eps1) cos theta`.
//! * [`transmittance_via_flux`] and [`reflectance_via_flux`] rebuild the
//!   outgoing field amplitudes and take Poynting-flux ratios.
//!
//! Everything here is `f64` and favours transparency over speed.

use num_complex::Complex;

use crate::error::{Error, Parity, Result};
use crate::impedance::{ImpedancePair, ModeSeries, StackConfig};
use crate::optics::{sqrt_upper, AmplitudePair};
use crate::{Plasma, Stack};

type C64 = Complex<f64>;

/// Smallest cutoff accepted by [`impedance_bruteforce`].
pub const MIN_BRUTEFORCE_CUTOFF: u64 = 10_000;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    #[inline]
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        (s, err)
    }

    #[inline]
    pub fn add_f64(&mut self, x: f64) {
        let (s, e) = Self::two_sum(self.hi, x);
        let e = e + self.lo;
        let (hi, lo) = Self::two_sum(s, e);
        self.hi = hi;
        self.lo = lo;
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ComplexAccumulator {
    re: DoubleDouble,
    im: DoubleDouble,
}

impl ComplexAccumulator {
    fn add(&mut self, z: C64) {
        self.re.add_f64(z.re);
        self.im.add_f64(z.im);
    }

    fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

/// Partial sums of `f(first + 2k)`, `k = 0..m`, at `m/4`, `m/2` and `m`
/// terms, extrapolated to `m -> infinity` assuming an error expansion in
/// powers of `1/m`. Returns the extrapolated value and the change made by
/// the last extrapolation level.
fn richardson_sum(first: i64, m: u64, f: impl Fn(i64) -> Result<C64>) -> Result<(C64, f64)> {
    let m = m - m % 4;
    let mut acc = ComplexAccumulator::default();
    let mut checkpoints = [C64::new(0.0, 0.0); 3];
    for k in 0..m {
        acc.add(f(first + 2 * k as i64)?);
        let done = k + 1;
        if done == m / 4 {
            checkpoints[0] = acc.value();
        } else if done == m / 2 {
            checkpoints[1] = acc.value();
        }
    }
    checkpoints[2] = acc.value();
    let [s4, s2, s1] = checkpoints;
    let r_coarse = s2 * 2.0 - s4;
    let r_fine = s1 * 2.0 - s2;
    let r2 = (r_fine * 4.0 - r_coarse) / 3.0;
    Ok((r2, (r2 - r_fine).norm()))
}

fn check_cutoff(n_cutoff: u64) -> Result<u64> {
    if n_cutoff < MIN_BRUTEFORCE_CUTOFF {
        return Err(Error::invalid(
            "n_cutoff",
            format!("must be >= {MIN_BRUTEFORCE_CUTOFF}, got {n_cutoff}"),
        ));
    }
    // harmonics 1..N of each parity
    Ok(n_cutoff / 2)
}

/// Brute-force `Z1`, `Z2` from harmonics up to `n_cutoff`. The reported
/// counts are the cutoff; `tail_estimate` is the size of the last
/// extrapolation correction, in impedance units.
pub fn impedance_bruteforce(
    cfg: &Stack,
    omega: f64,
    plasma: &Plasma,
    n_cutoff: u64,
) -> Result<ImpedancePair<f64>> {
    let m = check_cutoff(n_cutoff)?;
    let series = ModeSeries::new(cfg, omega, plasma)?;
    let scale = 4.0 * omega / series.width();
    let prefactor = C64::new(0.0, -scale);

    let (odd, odd_err) = richardson_sum(1, m, |n| series.term(n))?;
    let (even, even_err) = richardson_sum(2, m, |n| series.term(n))?;
    let even = even + series.term(0)? / 2.0;
    Ok(ImpedancePair {
        z1: prefactor * odd,
        z2: prefactor * even,
        n_used_odd: n_cutoff,
        n_used_even: n_cutoff,
        tail_estimate: scale * odd_err.max(even_err),
    })
}

/// Impedances from the single-denominator "transformed" sums
/// `-(4i Omega / W) sum 1/(Omega^2 eps_tr - Q^2)` over positive odd `n`
/// (and the analogous even sum with a half-weight `n = 0` term).
///
/// These drop the longitudinal bracket and the `Qx^2/Q^2` weight; they are
/// evaluated only to quantify how far they sit from the full mode sum.
pub fn impedance_transformed(
    cfg: &Stack,
    omega: f64,
    plasma: &Plasma,
    n_cutoff: u64,
) -> Result<(C64, C64)> {
    let m = check_cutoff(n_cutoff)?;
    let series = ModeSeries::new(cfg, omega, plasma)?;
    let eps = plasma.collision_ratio();
    let term = |n: i64| -> Result<C64> {
        let mode = series.mode(n);
        let et = crate::dielectric::eps_tr(mode.q1, omega, eps)?.value();
        Ok((et * (omega * omega) - mode.q_squared()).inv())
    };
    let prefactor = C64::new(0.0, -4.0 * omega / series.width());
    let (odd, _) = richardson_sum(1, m, term)?;
    let (even, _) = richardson_sum(2, m, term)?;
    Ok((prefactor * odd, prefactor * (even + term(0)? / 2.0)))
}

/// Zero up to the rounding of quantities of size `scale`.
fn near_zero(x: f64, scale: f64) -> bool {
    x.abs() <= 8.0 * f64::EPSILON * scale.abs().max(1.0)
}

/// `eps2 - eps1 sin^2 theta`, with a rounding-level remainder at the
/// critical angle set to zero.
fn normal_square(eps2: f64, tangential: f64) -> f64 {
    let d = eps2 - tangential;
    if near_zero(d, eps2) {
        0.0
    } else {
        d
    }
}

fn require_real_media(cfg: &StackConfig<f64>) -> Result<f64> {
    if cfg.eps2().im != 0.0 {
        return Err(Error::invalid(
            "eps2",
            "reference T/R forms need a real eps2",
        ));
    }
    Ok(cfg.eps2().re)
}

/// `(T, R)` from the forms written with `sqrt(eps2 - eps1 sin^2 theta)`
/// and `sqrt(eps1) cos theta`, and `beta12` in its product form.
pub fn tra_via_eq9_eq11(p: &AmplitudePair<f64>, cfg: &Stack) -> Result<(f64, f64)> {
    let eps2 = require_real_media(cfg)?;
    let eps1 = cfg.eps1();
    let (sin, cos) = cfg.theta().sin_cos();
    let sin2 = sin * sin;
    let u = cfg.beta_sin2();
    if near_zero(eps2 - u, eps2) {
        return Err(Error::domain(
            "tra_via_eq9_eq11",
            "beta12 diverges (beta2 = 0)",
        ));
    }
    let beta12 = eps2 * (eps1 - u) / (eps1 * (eps2 - u));
    let k2 = sqrt_upper(C64::new(normal_square(eps2, eps1 * sin2), 0.0));
    let k1 = eps1.sqrt() * cos;
    let one = C64::new(1.0, 0.0);
    let pb = (p.p1 + p.p2) / 2.0;
    let prod = p.p1 * p.p2;
    let den = k2 * beta12 * (one + pb) + (one - pb) * k1;
    if den.norm() == 0.0 {
        return Err(Error::domain("tra_via_eq9_eq11", "vanishing denominator"));
    }
    let r = ((k2 * beta12 * (pb + prod) + (pb - prod) * k1) / den).norm_sqr();
    let flux = sqrt_upper(C64::new(eps1 * normal_square(eps2, eps1 * sin2), 0.0)).re;
    let t = cos * beta12 * flux * ((p.p1 - p.p2) / den).norm_sqr();
    Ok((t, r))
}

/// Outgoing-wave coefficients of the combined field `b2 E^(1) - b1 E^(2)`:
/// (incident, reflected, transmitted), each up to the common factor
/// `2 beta1 k2x / (h1 h2)`.
fn combined_field(p: &AmplitudePair<f64>, cfg: &Stack) -> Result<(C64, C64, C64, Fluxes)> {
    let eps2 = require_real_media(cfg)?;
    let eps1 = cfg.eps1();
    let cos = cfg.theta().cos();
    let sin2 = cfg.theta().sin().powi(2);
    let u = cfg.beta_sin2();
    let beta1 = C64::new(1.0 - u / eps1, 0.0);
    let beta2 = C64::new(1.0 - u / eps2, 0.0);
    if near_zero(eps2 - u, eps2) {
        return Err(Error::domain(
            "flux",
            "substrate flux factor diverges (beta2 = 0)",
        ));
    }
    let k1 = C64::new(eps1.sqrt() * cos, 0.0);
    let k2 = sqrt_upper(C64::new(normal_square(eps2, eps1 * sin2), 0.0));
    let fluxes = Fluxes {
        medium1: (k1 / beta1).re,
        medium2: (k2 / beta2).re,
    };
    let plus = beta2 * k1 + beta1 * k2;
    let minus = beta1 * k2 - beta2 * k1;
    // b2 - b1, p1 b2 - p2 b1, a1 b2 - a2 b1
    let incident = plus * 2.0 + minus * (p.p1 + p.p2);
    let reflected = (p.p1 + p.p2) * plus + minus * p.p1 * p.p2 * 2.0;
    let transmitted = beta2 * k1 * (p.p2 - p.p1) * 2.0;
    Ok((incident, reflected, transmitted, fluxes))
}

/// `Re(k_jx / beta_j)` in each half-space; the x-flux of a plane wave of
/// amplitude `E` is proportional to `|E|^2` times this.
struct Fluxes {
    medium1: f64,
    medium2: f64,
}

/// Transmittance as the ratio of transmitted to incident x-flux.
pub fn transmittance_via_flux(p: &AmplitudePair<f64>, cfg: &Stack) -> Result<f64> {
    let (incident, _, transmitted, fluxes) = combined_field(p, cfg)?;
    if incident.norm() == 0.0 {
        return Err(Error::domain("transmittance_via_flux", "no incident wave"));
    }
    Ok(transmitted.norm_sqr() * fluxes.medium2 / (incident.norm_sqr() * fluxes.medium1))
}

/// Reflectance as the ratio of reflected to incident x-flux.
pub fn reflectance_via_flux(p: &AmplitudePair<f64>, cfg: &Stack) -> Result<f64> {
    let (incident, reflected, _, _) = combined_field(p, cfg)?;
    if incident.norm() == 0.0 {
        return Err(Error::domain("reflectance_via_flux", "no incident wave"));
    }
    Ok(reflected.norm_sqr() / incident.norm_sqr())
}

/// One production-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub quantity: String,
    pub production: C64,
    pub oracle: C64,
    pub abs_error: f64,
    pub rel_error: f64,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, production: C64, oracle: C64) -> Self {
        let abs_error = (production - oracle).norm();
        let scale = oracle.norm();
        let rel_error = if scale > 0.0 {
            abs_error / scale
        } else {
            abs_error
        };
        Self {
            quantity: quantity.into(),
            production,
            oracle,
            abs_error,
            rel_error,
        }
    }

    pub fn real(quantity: impl Into<String>, production: f64, oracle: f64) -> Self {
        Self::new(quantity, C64::new(production, 0.0), C64::new(oracle, 0.0))
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: production {:.12e}{:+.12e}i, oracle {:.12e}{:+.12e}i, abs {:.3e}, rel {:.3e}",
            self.quantity,
            self.production.re,
            self.production.im,
            self.oracle.re,
            self.oracle.im,
            self.abs_error,
            self.rel_error
        )
    }
}

/// Parity-labelled production and brute-force impedances at one point.
pub fn compare_impedances(
    cfg: &Stack,
    omega: f64,
    plasma: &Plasma,
    production: &ImpedancePair<f64>,
    n_cutoff: u64,
) -> Result<[OracleReport; 2]> {
    let oracle = impedance_bruteforce(cfg, omega, plasma, n_cutoff)?;
    Ok([
        OracleReport::new(format!("Z1 ({})", Parity::Odd), production.z1, oracle.z1),
        OracleReport::new(format!("Z2 ({})", Parity::Even), production.z2, oracle.z2),
    ])
}
