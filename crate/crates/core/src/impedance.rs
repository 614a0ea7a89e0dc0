//! Surface impedances of a film with specular electron reflection.
//!
//! Both impedances are mode sums over the standing-wave harmonics of the
//! film,
//!
//! ```text
//! Z = -(2i Omega / W) sum_n (1/Q^2) [ Qz^2 / (Omega^2 eps_l) + Qx^2 / (Omega^2 eps_tr - Q^2) ]
//! ```
//!
//! over odd `n` for the antisymmetric configuration (`Z1`) and even `n` for
//! the symmetric one (`Z2`). The summand decays only like `1/n^2`, so the
//! part that survives at large `n`,
//!
//! ```text
//! g(n) = c2 / Q^2 + c4 / (Q^2 (Q^2 + K^2)),
//! c2   = Qz^2/Omega^2 - 1,
//! c4   = Qz^2 - Omega^2 - 3 Qz^2 / (Omega^2 kappa^2),    kappa = v_F / c,
//! ```
//!
//! where `kappa K` is the wavenumber at which the large-`q1` expansions of the
//! dielectric functions take over. This part is summed in closed form (see [`crate::lattice`]) and only the
//! remainder `term(n) - g(n) = O(n^-5)` is accumulated numerically.

use num_complex::Complex;

use crate::dielectric::{eps_l, eps_tr, PlasmaParams, SPEED_OF_LIGHT_CM_S};
use crate::error::{Error, Parity, Result};
use crate::lattice;
use crate::scalar::Scalar;
use crate::summation::CompensatedSum;

/// Film and surrounding media.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackConfig<T> {
    thickness_nm: T,
    eps1: T,
    eps2: Complex<T>,
    theta: T,
    beta_convention: BetaConvention,
}

/// In-plane wavenumber entering the boundary factors
/// `beta_j = 1 - u / eps_j` of the two half-spaces.
///
/// `InMedium` takes `u = eps1 sin^2 theta`, the in-plane wavenumber the
/// incident wave actually carries and the one used for `Qz` and `k_2x`.
/// With it a film of local Drude metal reproduces classical three-layer
/// Fresnel optics. `Vacuum` takes `u = sin^2 theta` whatever `eps1` is.
/// The two agree for `eps1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaConvention {
    #[default]
    InMedium,
    Vacuum,
}

impl BetaConvention {
    pub fn name(self) -> &'static str {
        match self {
            BetaConvention::Vacuum => "vacuum",
            BetaConvention::InMedium => "in_medium",
        }
    }
}

impl std::str::FromStr for BetaConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vacuum" => Ok(BetaConvention::Vacuum),
            "in_medium" => Ok(BetaConvention::InMedium),
            other => Err(Error::invalid(
                "beta_convention",
                format!("expected \"vacuum\" or \"in_medium\", got {other:?}"),
            )),
        }
    }
}

impl<T: Scalar> StackConfig<T> {
    /// `theta` in radians.
    pub fn new(thickness_nm: T, eps1: T, eps2: Complex<T>, theta: T) -> Result<Self> {
        if !(thickness_nm.is_finite() && thickness_nm > T::zero()) {
            return Err(Error::invalid(
                "d_nm",
                format!("must be finite and > 0, got {thickness_nm}"),
            ));
        }
        if !(eps1.is_finite() && eps1 > T::zero()) {
            return Err(Error::invalid(
                "eps1",
                format!("must be real, finite and > 0, got {eps1}"),
            ));
        }
        if !(eps2.re.is_finite() && eps2.im.is_finite()) || eps2.norm() == T::zero() {
            return Err(Error::invalid(
                "eps2",
                format!("must be finite and nonzero, got {eps2}"),
            ));
        }
        if !(theta.is_finite() && theta >= T::zero() && theta < T::FRAC_PI_2()) {
            return Err(Error::invalid(
                "theta",
                format!(
                    "must lie in [0, 90) degrees, got {} degrees",
                    theta.to_degrees()
                ),
            ));
        }
        Ok(Self {
            thickness_nm,
            eps1,
            eps2,
            theta,
            beta_convention: BetaConvention::default(),
        })
    }

    /// Transparent substrate, angle in degrees.
    pub fn from_degrees(thickness_nm: T, eps1: T, eps2: T, theta_deg: T) -> Result<Self> {
        if !(theta_deg.is_finite() && theta_deg >= T::zero() && theta_deg < T::lit(90.0)) {
            return Err(Error::invalid(
                "theta",
                format!("must lie in [0, 90) degrees, got {theta_deg} degrees"),
            ));
        }
        Self::new(
            thickness_nm,
            eps1,
            Complex::new(eps2, T::zero()),
            theta_deg.to_radians(),
        )
    }

    pub fn thickness_nm(&self) -> T {
        self.thickness_nm
    }

    pub fn eps1(&self) -> T {
        self.eps1
    }

    pub fn eps2(&self) -> Complex<T> {
        self.eps2
    }

    /// Incidence angle in radians.
    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn beta_convention(&self) -> BetaConvention {
        self.beta_convention
    }

    /// `u` in `beta_j = 1 - u / eps_j`.
    pub fn beta_sin2(&self) -> T {
        let sin2 = self.theta.sin().powi(2);
        match self.beta_convention {
            BetaConvention::Vacuum => sin2,
            BetaConvention::InMedium => self.eps1 * sin2,
        }
    }

    pub fn with_beta_convention(mut self, convention: BetaConvention) -> Self {
        self.beta_convention = convention;
        self
    }

    pub fn with_thickness(self, thickness_nm: T) -> Result<Self> {
        Ok(Self::new(thickness_nm, self.eps1, self.eps2, self.theta)?
            .with_beta_convention(self.beta_convention))
    }

    pub fn with_theta(self, theta: T) -> Result<Self> {
        Ok(Self::new(self.thickness_nm, self.eps1, self.eps2, theta)?
            .with_beta_convention(self.beta_convention))
    }

    pub fn with_eps1(self, eps1: T) -> Result<Self> {
        Ok(Self::new(self.thickness_nm, eps1, self.eps2, self.theta)?
            .with_beta_convention(self.beta_convention))
    }

    pub fn with_eps2(self, eps2: Complex<T>) -> Result<Self> {
        Ok(Self::new(self.thickness_nm, self.eps1, eps2, self.theta)?
            .with_beta_convention(self.beta_convention))
    }
}

/// Truncation policy for the mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    n_max: u64,
    consecutive_below: u32,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            n_max: 200_000,
            consecutive_below: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, n_max: u64, consecutive_below: u32) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(Error::invalid(
                "series.rel_tol",
                format!("must be > 0, got {rel_tol}"),
            ));
        }
        if n_max < 8 {
            return Err(Error::invalid(
                "series.n_max",
                format!("must be >= 8, got {n_max}"),
            ));
        }
        if consecutive_below < 2 {
            return Err(Error::invalid(
                "series.consecutive_below",
                format!("must be >= 2, got {consecutive_below}"),
            ));
        }
        Ok(Self {
            rel_tol,
            n_max,
            consecutive_below,
        })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn consecutive_below(&self) -> u32 {
        self.consecutive_below
    }
}

/// Dimensionless wavevector of one harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTerm<T> {
    pub n: i64,
    pub qx: T,
    pub qz: T,
    pub q1: T,
}

impl<T: Scalar> ModeTerm<T> {
    /// `Q^2 = Qx^2 + Qz^2`.
    pub fn q_squared(&self) -> T {
        self.qx * self.qx + self.qz * self.qz
    }
}

/// Value of one mode sum with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<T> {
    pub value: Complex<T>,
    /// Largest harmonic index included.
    pub n_used: u64,
    /// Bound on `|Z - Z_truncated|`, same units as `value`.
    pub tail_estimate: T,
}

/// Both surface impedances at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair<T> {
    /// Antisymmetric configuration.
    pub z1: Complex<T>,
    /// Symmetric configuration.
    pub z2: Complex<T>,
    pub n_used_odd: u64,
    pub n_used_even: u64,
    /// Larger of the two truncation bounds.
    pub tail_estimate: T,
}

impl<T: Scalar> ImpedancePair<T> {
    pub fn from_sums(odd: SeriesSum<T>, even: SeriesSum<T>) -> Self {
        Self {
            z1: odd.value,
            z2: even.value,
            n_used_odd: odd.n_used,
            n_used_even: even.n_used,
            tail_estimate: odd.tail_estimate.max(even.tail_estimate),
        }
    }

    /// Impedances without series diagnostics, e.g. for synthetic inputs.
    pub fn exact(z1: Complex<T>, z2: Complex<T>) -> Self {
        Self {
            z1,
            z2,
            n_used_odd: 0,
            n_used_even: 0,
            tail_estimate: T::zero(),
        }
    }
}

/// `W = omega_p d / c` with `d` in nanometres.
pub fn film_width_parameter<T: Scalar>(thickness_nm: T, plasma: &PlasmaParams<T>) -> Result<T> {
    if !(thickness_nm.is_finite() && thickness_nm > T::zero()) {
        return Err(Error::invalid(
            "d_nm",
            format!("must be finite and > 0, got {thickness_nm}"),
        ));
    }
    Ok(plasma.omega_p() / T::lit(SPEED_OF_LIGHT_CM_S) * thickness_nm * T::lit(1e-7))
}

/// Wavevector components of harmonic `n`.
pub fn mode_term<T: Scalar>(
    n: i64,
    width: T,
    omega: T,
    theta: T,
    eps1: T,
    plasma: &PlasmaParams<T>,
) -> ModeTerm<T> {
    let qx = T::PI() * T::from_i64(n).unwrap() / width;
    let qz = eps1.sqrt() * omega * theta.sin();
    let q1 = plasma.fermi_ratio() * qx.hypot(qz);
    ModeTerm { n, qx, qz, q1 }
}

/// The bracketed summand `(1/Q^2) [Qz^2/(Omega^2 eps_l) + Qx^2/(Omega^2 eps_tr - Q^2)]`.
///
/// Only the bracket whose weight is nonzero is evaluated, so `Qx = 0` needs
/// only `eps_l` and `Qz = 0` only `eps_tr`.
pub fn impedance_term<T: Scalar>(t: &ModeTerm<T>, omega: T, eps: T) -> Result<Complex<T>> {
    let q2 = t.q_squared();
    if q2 == T::zero() {
        return Err(Error::domain(
            "impedance_term",
            "Q^2 = 0 (n = 0 at normal incidence); use the limiting value",
        ));
    }
    let omega2 = omega * omega;
    let zero = Complex::new(T::zero(), T::zero());
    let longitudinal = if t.qz == T::zero() {
        zero
    } else {
        let el = eps_l(t.q1, omega, eps)?.value();
        (el * omega2).inv() * (t.qz * t.qz)
    };
    let transverse = if t.qx == T::zero() {
        zero
    } else {
        let et = eps_tr(t.q1, omega, eps)?.value();
        let den = et * omega2 - q2;
        if den.re == T::zero() && den.im == T::zero() {
            return Err(Error::domain(
                "impedance_term",
                format!("transverse resonance Omega^2 eps_tr = Q^2 at n = {}", t.n),
            ));
        }
        den.inv() * (t.qx * t.qx)
    };
    Ok((longitudinal + transverse) / q2)
}

/// Per-point evaluation context of the mode sums.
#[derive(Debug, Clone, Copy)]
pub struct ModeSeries<T> {
    plasma: PlasmaParams<T>,
    width: T,
    omega: T,
    theta: T,
    eps1: T,
    eps: T,
}

impl<T: Scalar> ModeSeries<T> {
    pub fn new(cfg: &StackConfig<T>, omega: T, plasma: &PlasmaParams<T>) -> Result<Self> {
        if !(omega.is_finite() && omega > T::zero()) {
            return Err(Error::invalid(
                "omega_over_omega_p",
                format!("must be finite and > 0, got {omega}"),
            ));
        }
        Ok(Self {
            plasma: *plasma,
            width: film_width_parameter(cfg.thickness_nm(), plasma)?,
            omega,
            theta: cfg.theta(),
            eps1: cfg.eps1(),
            eps: plasma.collision_ratio(),
        })
    }

    pub fn width(&self) -> T {
        self.width
    }

    pub fn mode(&self, n: i64) -> ModeTerm<T> {
        mode_term(
            n,
            self.width,
            self.omega,
            self.theta,
            self.eps1,
            &self.plasma,
        )
    }

    /// Summand of harmonic `n`; `n = 0` at normal incidence takes the
    /// `Qx -> 0` limit `1/(Omega^2 eps_tr(0))`.
    pub fn term(&self, n: i64) -> Result<Complex<T>> {
        let mode = self.mode(n);
        if mode.q_squared() == T::zero() {
            let et = eps_tr(T::zero(), self.omega, self.eps)?.value();
            return Ok((et * (self.omega * self.omega)).inv());
        }
        impedance_term(&mode, self.omega, self.eps)
    }

    /// Large-`n` part of the summand, `c2/Q^2 + c4/(Q^2 (Q^2 + K^2))`.
    ///
    /// `c2` and `c4` come from `eps_tr -> 1` and `eps_l -> 1 + 3/q1^2`. The
    /// second piece behaves like `c4/Q^4` for `Q >> K` but stays bounded at
    /// low `n`, where `c4/Q^4` would dwarf the summand itself.
    pub fn asymptotic_term(&self, n: i64) -> T {
        let mode = self.mode(n);
        let (c2, c4, k2) = self.asymptotic_coefficients();
        let q2 = mode.q_squared();
        c2 / q2 + c4 / (q2 * (q2 + k2))
    }

    /// `c2 = Qz^2/Omega^2 - 1`, `c4 = Qz^2 - Omega^2 - 3 Qz^2 / (Omega^2 kappa^2)`
    /// with `kappa = v_F/c`, and the regulator `K^2` placed where `q1`
    /// leaves the dispersive region.
    fn asymptotic_coefficients(&self) -> (T, T, T) {
        let qz = self.eps1.sqrt() * self.omega * self.theta.sin();
        let b2 = qz * qz;
        let o2 = self.omega * self.omega;
        let kappa = self.plasma.fermi_ratio();
        let c2 = b2 / o2 - T::one();
        let c4 = b2 - o2 - T::lit(3.0) * b2 / (o2 * kappa * kappa);
        let k = self.onset_wavenumber() / kappa;
        (c2, c4, k * k)
    }

    /// `term(n) - asymptotic_term(n)`, which decays like `n^-5`.
    pub fn remainder(&self, n: i64) -> Result<Complex<T>> {
        Ok(self.term(n)? - self.asymptotic_term(n))
    }

    /// Closed-form sum of [`asymptotic_term`](Self::asymptotic_term) over
    /// `n = 1, 3, 5, ...` (odd) or `n = 2, 4, 6, ...` (even).
    pub fn asymptotic_sum(&self, parity: Parity) -> T {
        // 1/(Q^2 (Q^2 + K^2)) = (1/Q^2 - 1/(Q^2 + K^2)) / K^2
        let alpha = T::PI() / self.width;
        let qz = self.eps1.sqrt() * self.omega * self.theta.sin();
        let (c2, c4, k2) = self.asymptotic_coefficients();
        let shifted = (qz * qz + k2).sqrt();
        let (plain, regulated) = match parity {
            Parity::Odd => {
                let a2 = alpha * alpha;
                (
                    lattice::odd_inverse_square(qz / alpha) / a2,
                    lattice::odd_inverse_square(shifted / alpha) / a2,
                )
            }
            Parity::Even => {
                let a = T::lit(2.0) * alpha;
                let a2 = a * a;
                (
                    lattice::positive_inverse_square(qz / a) / a2,
                    lattice::positive_inverse_square(shifted / a) / a2,
                )
            }
        };
        c2 * plain + c4 / k2 * (plain - regulated)
    }

    /// `-(4i Omega / W)`, the factor turning a half-line bracket into `Z`.
    fn prefactor(&self) -> Complex<T> {
        Complex::new(T::zero(), -T::lit(4.0) * self.omega / self.width)
    }

    /// `q1` beyond which the dielectric functions follow their
    /// large-wavenumber expansions.
    fn onset_wavenumber(&self) -> T {
        T::lit(2.0) * (self.omega.hypot(self.eps) + T::one())
    }

    /// Harmonic index beyond which the dielectric functions are in their
    /// large-wavenumber regime; the stopping test is not trusted before it.
    fn asymptotic_onset(&self) -> u64 {
        let n = self.onset_wavenumber() / self.plasma.fermi_ratio() * self.width / T::PI();
        n.to_f64_lossy().ceil().clamp(1.0, 1e15) as u64
    }

    /// Sums one parity family and returns `Z` with diagnostics.
    pub fn sum(&self, parity: Parity, ctrl: &SeriesControl) -> Result<SeriesSum<T>> {
        // Z = -(4i Omega / W) * B, with
        //   B_odd  = sum_{n = 1, 3, ...} term(n)
        //   B_even = term(0)/2 + sum_{n = 2, 4, ...} term(n)
        let (first, base) = match parity {
            Parity::Odd => (1u64, Complex::new(T::zero(), T::zero())),
            Parity::Even => (2u64, self.term(0)? / T::lit(2.0)),
        };
        let closed = self.asymptotic_sum(parity);
        let onset = self.asymptotic_onset();
        let rel_tol = T::lit(ctrl.rel_tol());
        let scale = self.prefactor().norm();

        let mut acc = CompensatedSum::new();
        let mut previous: Option<T> = None;
        let mut below = 0u32;
        let mut n = first;
        loop {
            let r = self.remainder(n as i64)?;
            acc.add(r);
            let magnitude = r.norm();
            let tail = tail_bound(magnitude, previous, n);
            previous = Some(magnitude);
            let bracket = base + acc.value() + closed;
            if n >= onset && tail <= rel_tol * bracket.norm() {
                below += 1;
                if below >= ctrl.consecutive_below() {
                    return Ok(SeriesSum {
                        value: self.prefactor() * bracket,
                        n_used: n,
                        tail_estimate: scale * tail,
                    });
                }
            } else {
                below = 0;
            }
            if n + 2 > ctrl.n_max() {
                let z = self.prefactor() * bracket;
                return Err(Error::NotConverged {
                    parity,
                    n_max: ctrl.n_max(),
                    partial_re: z.re.to_f64_lossy(),
                    partial_im: z.im.to_f64_lossy(),
                    tail_estimate: (scale * tail).to_f64_lossy(),
                });
            }
            n += 2;
        }
    }
}

/// Bound on `sum_{k = n+2, n+4, ...} |r(k)|` from the last two remainder
/// magnitudes, assuming power-law decay with the locally observed exponent
/// capped at the asymptotic value 5. A factor 2 of slack is included.
fn tail_bound<T: Scalar>(current: T, previous: Option<T>, n: u64) -> T {
    let nf = T::from_u64(n).unwrap();
    let Some(prev) = previous else {
        return T::infinity();
    };
    if current == T::zero() {
        return if prev == T::zero() {
            T::zero()
        } else {
            T::infinity()
        };
    }
    let exponent = (prev / current).ln() / (nf / (nf - T::lit(2.0))).ln();
    // NaN counts as no usable decay
    if exponent.is_nan() || exponent <= T::lit(1.5) {
        return T::infinity();
    }
    let p = exponent.min(T::lit(5.0));
    // sum_{k > n, step 2} C k^-p <= C n^(1-p) / (2 (p - 1)) ; times 2 slack
    current * nf / (p - T::one())
}

/// `Z1`, the odd-harmonic (antisymmetric) impedance.
pub fn impedance_antisymmetric<T: Scalar>(
    cfg: &StackConfig<T>,
    omega: T,
    plasma: &PlasmaParams<T>,
    ctrl: &SeriesControl,
) -> Result<SeriesSum<T>> {
    ModeSeries::new(cfg, omega, plasma)?.sum(Parity::Odd, ctrl)
}

/// `Z2`, the even-harmonic (symmetric) impedance.
pub fn impedance_symmetric<T: Scalar>(
    cfg: &StackConfig<T>,
    omega: T,
    plasma: &PlasmaParams<T>,
    ctrl: &SeriesControl,
) -> Result<SeriesSum<T>> {
    ModeSeries::new(cfg, omega, plasma)?.sum(Parity::Even, ctrl)
}

/// Both impedances at one point.
pub fn impedance_pair<T: Scalar>(
    cfg: &StackConfig<T>,
    omega: T,
    plasma: &PlasmaParams<T>,
    ctrl: &SeriesControl,
) -> Result<ImpedancePair<T>> {
    let series = ModeSeries::new(cfg, omega, plasma)?;
    let odd = series.sum(Parity::Odd, ctrl)?;
    let even = series.sum(Parity::Even, ctrl)?;
    Ok(ImpedancePair::from_sums(odd, even))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sodium() -> PlasmaParams<f64> {
        PlasmaParams::sodium(1e-3).unwrap()
    }

    fn rel(a: Complex<f64>, b: Complex<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn width_parameter() {
        let w = film_width_parameter(10.0, &sodium()).unwrap();
        // 6.5e15 * 10e-7 / 2.99792458e10
        assert!((w - 0.216_816_661_878_798_83).abs() < 1e-15, "{w}");
        let w2 = film_width_parameter(20.0, &sodium()).unwrap();
        assert!((w2 - 2.0 * w).abs() < 1e-15);
        assert!(film_width_parameter(0.0, &sodium()).is_err());
        assert!(film_width_parameter(-1.0, &sodium()).is_err());
    }

    #[test]
    fn mode_components() {
        let na = sodium();
        let m = mode_term(0, 1.0, 1.0, 0.0, 1.0, &na);
        assert_eq!((m.qx, m.qz, m.q1), (0.0, 0.0, 0.0));
        let m = mode_term(1, PI, 1.0, 0.3, 1.0, &na);
        assert!((m.qx - 1.0).abs() < 1e-15);

        let w = 0.21682;
        let th = 75f64.to_radians();
        let m = mode_term(3, w, 1.0, th, 1.0, &na);
        let expected =
            8.52e7 / 2.997_924_58e10 * ((3.0 * PI / w).powi(2) + th.sin().powi(2)).sqrt();
        assert!((m.q1 - expected).abs() < 1e-14 * expected);
        assert!((m.qz - th.sin()).abs() < 1e-15);
    }

    #[test]
    fn term_reductions() {
        let na = sodium();
        let eps = na.collision_ratio();
        // Qx = 0: longitudinal bracket only
        let m = mode_term(0, 0.2, 1.1, 0.4, 2.0, &na);
        let t = impedance_term(&m, 1.1, eps).unwrap();
        let el = eps_l(m.q1, 1.1, eps).unwrap().value();
        assert!(rel(t, (el * 1.21).inv()) < 1e-14);
        // Qz = 0: transverse bracket only
        let m = mode_term(3, 0.2, 1.1, 0.0, 2.0, &na);
        let t = impedance_term(&m, 1.1, eps).unwrap();
        let et = eps_tr(m.q1, 1.1, eps).unwrap().value();
        assert!(rel(t, (et * 1.21 - m.qx * m.qx).inv()) < 1e-14);
        // Q = 0 rejected
        let m = mode_term(0, 0.2, 1.1, 0.0, 2.0, &na);
        assert!(matches!(
            impedance_term(&m, 1.1, eps),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn term_matches_high_precision_reference() {
        let na = sodium();
        let w = film_width_parameter(10.0, &na).unwrap();
        let m = mode_term(1, w, 1.0, 75f64.to_radians(), 1.0, &na);
        let t = impedance_term(&m, 1.0, 1e-3).unwrap();
        let reference = Complex::new(-2.2109467919680609241, -2.1637340611048848594);
        assert!(rel(t, reference) < 1e-12, "{t}");
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(0.0, 100, 3).is_err());
        assert!(SeriesControl::new(1e-10, 7, 3).is_err());
        assert!(SeriesControl::new(1e-10, 8, 1).is_err());
        assert!(SeriesControl::new(1e-10, 8, 2).is_ok());
    }

    #[test]
    fn stack_validation() {
        assert!(StackConfig::from_degrees(10.0, 1.0, 4.0, 90.0).is_err());
        assert!(StackConfig::from_degrees(10.0, 1.0, 4.0, -1.0).is_err());
        assert!(StackConfig::from_degrees(0.0, 1.0, 4.0, 10.0).is_err());
        assert!(StackConfig::from_degrees(10.0, 0.0, 4.0, 10.0).is_err());
        assert!(StackConfig::from_degrees(10.0, 1.0, 4.0, 89.9).is_ok());
        match StackConfig::from_degrees(10.0, 1.0, 4.0, 95.0) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "theta"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn asymptotic_sum_matches_direct_sum() {
        let na = sodium();
        for &(d, th) in &[(1.0, 75.0), (100.0, 15.0), (10.0, 0.0)] {
            let cfg = StackConfig::from_degrees(d, 8.0, 1.0, th).unwrap();
            let s = ModeSeries::new(&cfg, 0.9, &na).unwrap();
            for (parity, first) in [(Parity::Odd, 1i64), (Parity::Even, 2)] {
                let mut direct = CompensatedSum::new();
                let mut n = 400_001 + first - 1;
                // smallest first
                while n >= first {
                    direct.add(Complex::new(s.asymptotic_term(n), 0.0));
                    n -= 2;
                }
                let closed = s.asymptotic_sum(parity);
                // leading tail (eps1 sin^2 - 1) W^2/(pi^2 n^2) over step-2 indices beyond 4e5
                let weight = 8.0 * th.to_radians().sin().powi(2) - 1.0;
                let tail = weight * (s.width() / PI).powi(2) / (2.0 * 400_000.0);
                let direct = direct.value().re + tail;
                assert!(
                    ((closed - direct) / closed).abs() < 1e-9,
                    "{parity}: {closed} vs {direct}"
                );
            }
        }
    }

    // 50-digit mpmath mode sums (crates/core/tests/data/reference_values.py).
    #[test]
    fn impedances_match_high_precision_reference() {
        let na = sodium();
        let ctrl = SeriesControl::default();
        let cfg = StackConfig::from_degrees(10.0, 8.0, 1.0, 15.0).unwrap();
        let z1 = impedance_antisymmetric(&cfg, 1.0, &na, &ctrl).unwrap();
        let z1_ref = Complex::new(-23.080742467916961216, 24.190303881992371648);
        assert!(rel(z1.value, z1_ref) < 1e-9, "Z1 = {}", z1.value);

        let cfg = StackConfig::from_degrees(100.0, 8.0, 1.0, 15.0).unwrap();
        let z2 = impedance_symmetric(&cfg, 1.0, &na, &ctrl).unwrap();
        let z2_ref = Complex::new(-1081.9974984794903343, 25.56161549488692226);
        assert!(rel(z2.value, z2_ref) < 1e-9, "Z2 = {}", z2.value);
    }

    #[test]
    fn n_zero_contribution_of_symmetric_sum() {
        let na = sodium();
        let cfg = StackConfig::from_degrees(100.0, 8.0, 1.0, 15.0).unwrap();
        let s = ModeSeries::new(&cfg, 1.0, &na).unwrap();
        let q10 = na.fermi_ratio() * 8f64.sqrt() * 15f64.to_radians().sin();
        let el = eps_l(q10, 1.0, 1e-3).unwrap().value();
        assert!(rel(s.term(0).unwrap(), el.inv()) < 1e-14);

        let cfg = StackConfig::from_degrees(100.0, 8.0, 1.0, 0.0).unwrap();
        let s = ModeSeries::new(&cfg, 1.0, &na).unwrap();
        let drude = Complex::new(1.0, 0.0) - Complex::new(1.0, 1e-3).inv();
        assert!(rel(s.term(0).unwrap(), drude.inv()) < 1e-14);
    }

    #[test]
    fn terms_depend_on_n_squared() {
        let na = sodium();
        let cfg = StackConfig::from_degrees(10.0, 8.0, 1.0, 15.0).unwrap();
        let s = ModeSeries::new(&cfg, 1.0, &na).unwrap();
        let pos: Complex<f64> = [1, 3].iter().map(|&n| s.term(n).unwrap()).sum();
        let both: Complex<f64> = [-3, -1, 1, 3].iter().map(|&n| s.term(n).unwrap()).sum();
        assert!(rel(both, pos * 2.0) < 1e-15);
    }

    #[test]
    fn converges_and_respects_tolerance() {
        let na = sodium();
        let ctrl = SeriesControl::default();
        for &d in &[1.0, 10.0, 100.0] {
            let cfg = StackConfig::from_degrees(d, 1.0, 4.0, 75.0).unwrap();
            let z = impedance_pair(&cfg, 0.8, &na, &ctrl).unwrap();
            assert!(z.tail_estimate <= 1e-10 * z.z1.norm().max(z.z2.norm()));
            assert!(z.n_used_odd < 20_000 && z.n_used_even < 20_000, "{z:?}");
            let wide = SeriesControl::new(1e-10, 400_000, 3).unwrap();
            let z_wide = impedance_pair(&cfg, 0.8, &na, &wide).unwrap();
            assert_eq!(z.z1, z_wide.z1);
        }
    }

    #[test]
    fn not_converged_is_reported() {
        let na = sodium();
        let ctrl = SeriesControl::new(1e-10, 8, 3).unwrap();
        let cfg = StackConfig::from_degrees(100.0, 1.0, 1.0, 10.0).unwrap();
        match impedance_antisymmetric(&cfg, 1.0, &na, &ctrl) {
            Err(Error::NotConverged {
                parity,
                n_max,
                tail_estimate,
                ..
            }) => {
                assert_eq!(parity, Parity::Odd);
                assert_eq!(n_max, 8);
                assert!(tail_estimate > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_precision_tracks_double() {
        let na32 = PlasmaParams::<f32>::sodium(1e-3).unwrap();
        let cfg32 = StackConfig::<f32>::from_degrees(10.0, 8.0, 1.0, 15.0).unwrap();
        let ctrl = SeriesControl::new(1e-6, 200_000, 3).unwrap();
        let z32 = impedance_pair(&cfg32, 0.7, &na32, &ctrl).unwrap();
        let cfg = StackConfig::from_degrees(10.0, 8.0, 1.0, 15.0).unwrap();
        let z64 = impedance_pair(&cfg, 0.7, &sodium(), &SeriesControl::default()).unwrap();
        let d1 = Complex::new(z32.z1.re as f64, z32.z1.im as f64) - z64.z1;
        assert!(d1.norm() < 1e-4 * z64.z1.norm(), "{} vs {}", z32.z1, z64.z1);
    }
}
