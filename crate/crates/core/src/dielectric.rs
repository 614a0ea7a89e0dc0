//! Nonlocal dielectric response of a degenerate electron gas.
//!
//! Both functions take the dimensionless wavenumber `q1 = k v_F / omega_p`,
//! the dimensionless frequency `Omega = omega / omega_p` and the
//! dimensionless collision rate `eps = nu / omega_p`. The collision rate
//! always enters as `Omega + i eps`, so the logarithm is evaluated on the
//! retarded side of its cut.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Speed of light in cm/s.
pub const SPEED_OF_LIGHT_CM_S: f64 = 2.997_924_58e10;

/// Sodium plasma frequency, rad/s.
pub const SODIUM_PLASMA_FREQUENCY: f64 = 6.5e15;

/// Sodium Fermi velocity, cm/s.
pub const SODIUM_FERMI_VELOCITY: f64 = 8.52e7;

/// Above `|q1 / (Omega + i eps)|` of this size the closed forms are used;
/// below it the power series in that ratio.
pub const SERIES_RADIUS: f64 = 0.3;

const SERIES_MAX_TERMS: usize = 80;

/// Electron-gas constants of the metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaParams<T> {
    omega_p: T,
    fermi_velocity: T,
    collision_frequency: T,
}

impl<T: Scalar> PlasmaParams<T> {
    /// `omega_p` and `nu` in rad/s, `fermi_velocity` in cm/s.
    pub fn new(omega_p: T, fermi_velocity: T, collision_frequency: T) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > T::zero()) {
            return Err(Error::invalid(
                "omega_p",
                format!("must be finite and > 0, got {omega_p}"),
            ));
        }
        if !(fermi_velocity.is_finite() && fermi_velocity > T::zero()) {
            return Err(Error::invalid(
                "v_F",
                format!("must be finite and > 0, got {fermi_velocity}"),
            ));
        }
        if fermi_velocity >= T::lit(SPEED_OF_LIGHT_CM_S) {
            return Err(Error::invalid("v_F", "must be below the speed of light"));
        }
        if !(collision_frequency.is_finite() && collision_frequency >= T::zero()) {
            return Err(Error::invalid(
                "nu",
                format!("must be finite and >= 0, got {collision_frequency}"),
            ));
        }
        Ok(Self {
            omega_p,
            fermi_velocity,
            collision_frequency,
        })
    }

    /// Builds the parameters from the dimensionless collision rate `nu / omega_p`.
    pub fn with_collision_ratio(omega_p: T, fermi_velocity: T, ratio: T) -> Result<Self> {
        if !(ratio.is_finite() && ratio >= T::zero()) {
            return Err(Error::invalid(
                "nu_over_omega_p",
                format!("must be finite and >= 0, got {ratio}"),
            ));
        }
        Self::new(omega_p, fermi_velocity, ratio * omega_p)
    }

    /// Sodium, with the collision frequency given as a fraction of `omega_p`.
    pub fn sodium(collision_ratio: T) -> Result<Self> {
        Self::with_collision_ratio(
            T::lit(SODIUM_PLASMA_FREQUENCY),
            T::lit(SODIUM_FERMI_VELOCITY),
            collision_ratio,
        )
    }

    pub fn omega_p(&self) -> T {
        self.omega_p
    }

    pub fn fermi_velocity(&self) -> T {
        self.fermi_velocity
    }

    pub fn collision_frequency(&self) -> T {
        self.collision_frequency
    }

    /// Dimensionless collision rate `eps = nu / omega_p`.
    pub fn collision_ratio(&self) -> T {
        self.collision_frequency / self.omega_p
    }

    /// `v_F / c`.
    pub fn fermi_ratio(&self) -> T {
        self.fermi_velocity / T::lit(SPEED_OF_LIGHT_CM_S)
    }

    /// `Omega = omega / omega_p` for an angular frequency in rad/s.
    pub fn dimensionless_frequency(&self, omega: T) -> T {
        omega / self.omega_p
    }
}

/// A dimensionless complex permittivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPermittivity<T>(pub Complex<T>);

impl<T: Scalar> ComplexPermittivity<T> {
    pub fn value(self) -> Complex<T> {
        self.0
    }

    pub fn re(self) -> T {
        self.0.re
    }

    pub fn im(self) -> T {
        self.0.im
    }
}

/// The common `q1 -> 0` limit of both functions, `1 - 1/(Omega (Omega + i eps))`.
pub fn drude_limit<T: Scalar>(omega: T, eps: T) -> Complex<T> {
    let w = Complex::new(omega, eps);
    Complex::new(T::one(), T::zero()) - (w * omega).inv()
}

/// Transverse permittivity `eps_tr(q1, Omega)`.
pub fn eps_tr<T: Scalar>(q1: T, omega: T, eps: T) -> Result<ComplexPermittivity<T>> {
    check_arguments("eps_tr", q1, omega, eps)?;
    let one = Complex::new(T::one(), T::zero());
    if q1 < T::small_q() {
        return Ok(ComplexPermittivity(drude_limit(omega, eps)));
    }
    let w = Complex::new(omega, eps);
    let z = w.inv() * q1;
    if z.norm() < T::lit(SERIES_RADIUS) {
        // 1 - 3/(Omega w) * sum_{k>=1} z^(2k-2) / (4k^2 - 1)
        let z2 = z * z;
        let sum = power_series(z2, |k| {
            let k = T::from_usize(k).unwrap();
            T::one() / (T::lit(4.0) * k * k - T::one())
        });
        return Ok(ComplexPermittivity(one - sum * T::lit(3.0) / (w * omega)));
    }
    let log = log_ratio(q1, omega, eps);
    let bracket = w * q1 * T::lit(2.0) + (w * w - q1 * q1) * log;
    let scale = T::lit(3.0) / (T::lit(4.0) * omega * q1 * q1 * q1);
    Ok(ComplexPermittivity(one - bracket * scale))
}

/// Longitudinal permittivity `eps_l(q1, Omega)`.
pub fn eps_l<T: Scalar>(q1: T, omega: T, eps: T) -> Result<ComplexPermittivity<T>> {
    check_arguments("eps_l", q1, omega, eps)?;
    let one = Complex::new(T::one(), T::zero());
    if q1 < T::small_q() {
        return Ok(ComplexPermittivity(drude_limit(omega, eps)));
    }
    let w = Complex::new(omega, eps);
    let z = w.inv() * q1;
    if z.norm() < T::lit(SERIES_RADIUS) {
        // numerator  = -sum_{k>=1} z^(2k) / (2k+1)
        // denominator = (Omega - i eps z^2 S) / w,  S = sum_{k>=1} z^(2k-2) / (2k+1)
        let z2 = z * z;
        let s = power_series(z2, |k| T::one() / T::from_usize(2 * k + 1).unwrap());
        let den = Complex::new(omega, T::zero()) - Complex::new(T::zero(), eps) * z2 * s;
        if den.norm() == T::zero() {
            return Err(Error::domain(
                "eps_l",
                format!("vanishing denominator at q1 = {q1}, Omega = {omega}, eps = {eps}"),
            ));
        }
        return Ok(ComplexPermittivity(one - s * T::lit(3.0) / (w * den)));
    }
    let log = log_ratio(q1, omega, eps);
    let half_inv_q = T::one() / (T::lit(2.0) * q1);
    let num = one + w * log * half_inv_q;
    let den = one + Complex::new(T::zero(), eps) * log * half_inv_q;
    if den.norm() <= T::epsilon() {
        return Err(Error::domain(
            "eps_l",
            format!("vanishing denominator at q1 = {q1}, Omega = {omega}, eps = {eps}"),
        ));
    }
    Ok(ComplexPermittivity(
        one + num / den * (T::lit(3.0) / (q1 * q1)),
    ))
}

/// `ln((w - q)/(w + q))` with `w = Omega + i eps`, principal branch.
///
/// The imaginary part of the ratio is `2 q eps / |w + q|^2 >= 0`, so the
/// argument is taken in `[0, pi]`; at `eps = 0` a negative ratio maps to
/// `+i pi`, the `eps -> 0+` side.
pub fn log_ratio<T: Scalar>(q: T, omega: T, eps: T) -> Complex<T> {
    let two = T::lit(2.0);
    let eps2 = eps * eps;
    let den = (omega + q) * (omega + q) + eps2;
    let modulus2 = ((omega - q) * (omega - q) + eps2) / den;
    let re = if modulus2 < T::lit(0.5) {
        modulus2.ln() / two
    } else {
        // |w-q|^2 - |w+q|^2 = -4 Omega q exactly
        (-(T::lit(4.0) * omega * q) / den).ln_1p() / two
    };
    let im = (two * q * eps)
        .abs()
        .atan2((omega - q) * (omega + q) + eps2);
    Complex::new(re, im)
}

/// `sum_{k>=1} coeff(k) * x^(k-1)` until the terms stop contributing.
fn power_series<T: Scalar>(x: Complex<T>, coeff: impl Fn(usize) -> T) -> Complex<T> {
    let mut sum = Complex::new(coeff(1), T::zero());
    let mut power = Complex::new(T::one(), T::zero());
    for k in 2..=SERIES_MAX_TERMS {
        power = power * x;
        let term = power * coeff(k);
        sum = sum + term;
        if term.norm() <= T::epsilon() * T::lit(0.25) * sum.norm() {
            break;
        }
    }
    sum
}

fn check_arguments<T: Scalar>(what: &'static str, q1: T, omega: T, eps: T) -> Result<()> {
    if !(omega.is_finite() && omega > T::zero()) {
        return Err(Error::domain(
            what,
            format!("Omega must be finite and > 0, got {omega}"),
        ));
    }
    if !(q1.is_finite() && q1 >= T::zero()) {
        return Err(Error::domain(
            what,
            format!("q1 must be finite and >= 0, got {q1}"),
        ));
    }
    if !(eps.is_finite() && eps >= T::zero()) {
        return Err(Error::domain(
            what,
            format!("eps must be finite and >= 0, got {eps}"),
        ));
    }
    if eps == T::zero() && q1 == omega {
        return Err(Error::domain(
            what,
            format!("logarithmic singularity at q1 = Omega = {omega} with eps = 0"),
        ));
    }
    Ok(())
}
