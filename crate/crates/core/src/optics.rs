//! From surface impedances to transmittance, reflectance and absorptance.

use num_complex::Complex;

use crate::dielectric::PlasmaParams;
use crate::error::{Error, Result};
use crate::impedance::{impedance_pair, BetaConvention, ImpedancePair, SeriesControl, StackConfig};
use crate::scalar::Scalar;

/// Angles at or above this (degrees) are flagged as grazing.
pub const GRAZING_THRESHOLD_DEG: f64 = 89.0;

/// Square root on the branch with `Im >= 0`. A negative real argument maps
/// to `+i sqrt(|x|)` with an exactly zero real part.
pub fn sqrt_upper<T: Scalar>(z: Complex<T>) -> Complex<T> {
    if z.im == T::zero() {
        return if z.re >= T::zero() {
            Complex::new(z.re.sqrt(), T::zero())
        } else {
            Complex::new(T::zero(), (-z.re).sqrt())
        };
    }
    let r = z.sqrt();
    if r.im < T::zero() {
        -r
    } else {
        r
    }
}

/// Snaps a real difference that is zero up to rounding to exactly zero, so
/// the critical angle itself lands in the total-reflection branch.
fn snap_to_zero<T: Scalar>(z: Complex<T>, scale: T) -> Complex<T> {
    if z.im == T::zero() && z.re.abs() <= T::lit(8.0) * T::epsilon() * scale.max(T::one()) {
        Complex::new(T::zero(), T::zero())
    } else {
        z
    }
}

/// Angle-dependent factors of the two dielectric half-spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryFactors<T> {
    pub cos_theta: T,
    pub sin2_theta: T,
    /// `1 - u / eps1`, with `u` from [`StackConfig::beta_sin2`].
    pub beta1: T,
    /// `1 - u / eps2`.
    pub beta2: Complex<T>,
    /// `beta1 / beta2`; infinite at the critical angle under
    /// [`BetaConvention::InMedium`].
    pub beta12: Complex<T>,
    /// `eps2 / eps1`.
    pub eps12: Complex<T>,
    /// `sqrt(eps1) cos(theta)`, `k_1x` in units of `omega / c`.
    pub k1x_factor: T,
    /// `sqrt(eps2 - eps1 sin^2 theta)`, `k_2x` in units of `omega / c`.
    pub k2x_factor: Complex<T>,
    /// `sqrt(eps12 - sin^2 theta)`.
    pub s: Complex<T>,
    /// Real media with `sin^2 theta >= eps2 / eps1`.
    pub total_internal_reflection: bool,
    /// Weight of the substrate side, `beta12 s`, in the `T` and `R` forms.
    pub k2_weight: Complex<T>,
    /// Weight of the incidence side, `cos(theta)`.
    pub k1_weight: T,
}

impl<T: Scalar> GeometryFactors<T> {
    pub fn new(cfg: &StackConfig<T>) -> Result<Self> {
        let (sin, cos_theta) = cfg.theta().sin_cos();
        let sin2 = sin * sin;
        let eps1 = cfg.eps1();
        let eps2 = cfg.eps2();
        let u = cfg.beta_sin2();
        let beta1 = T::one() - u / eps1;
        if beta1 == T::zero() {
            return Err(Error::domain(
                "geometry",
                format!("beta1 = 0 (u = eps1 = {eps1})"),
            ));
        }
        let eps12 = eps2 / eps1;
        let s_arg = snap_to_zero(eps12 - sin2, eps12.norm());
        let k2_arg = snap_to_zero(eps2 - eps1 * sin2, eps2.norm());
        let total_internal_reflection = eps2.im == T::zero() && s_arg.re <= T::zero();
        let s = sqrt_upper(s_arg);
        let zero = Complex::new(T::zero(), T::zero());
        let (beta2, beta12, k2_weight, k1_weight) = match cfg.beta_convention() {
            BetaConvention::InMedium => {
                // beta2 = eps1 s^2 / eps2, so beta12 s = beta1 eps2 / (eps1 s),
                // which diverges at the critical angle; there only the
                // substrate term survives in T and R.
                let beta2 = s * s * eps1 / eps2;
                if s == zero {
                    let inf = Complex::new(T::infinity(), T::zero());
                    (beta2, inf, Complex::new(T::one(), T::zero()), T::zero())
                } else {
                    let w = s.inv() * (eps2 * (beta1 / eps1));
                    (beta2, beta2.inv() * beta1, w, cos_theta)
                }
            }
            BetaConvention::Vacuum => {
                let beta2 = Complex::new(T::one(), T::zero()) - eps2.inv() * u;
                if beta2.norm() <= T::lit(8.0) * T::epsilon() {
                    return Err(Error::domain(
                        "geometry",
                        format!("beta2 = 0 (sin^2 theta = eps2 = {eps2}); beta12 diverges"),
                    ));
                }
                let beta12 = beta2.inv() * beta1;
                (beta2, beta12, beta12 * s, cos_theta)
            }
        };
        Ok(Self {
            cos_theta,
            sin2_theta: sin2,
            beta1,
            beta2,
            beta12,
            eps12,
            k1x_factor: eps1.sqrt() * cos_theta,
            k2x_factor: sqrt_upper(k2_arg),
            s,
            total_internal_reflection,
            k2_weight,
            k1_weight,
        })
    }

    /// Common denominator `beta12 s (1 + p_bar) + cos(theta) (1 - p_bar)`.
    fn denominator(&self, p: &AmplitudePair<T>) -> Result<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        let den = self.k2_weight * (one + p.p_bar) + (one - p.p_bar) * self.k1_weight;
        if den.norm() == T::zero() {
            return Err(Error::domain("optics", "vanishing denominator in T/R"));
        }
        Ok(den)
    }
}

/// Reflection amplitudes of the two field configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair<T> {
    pub p1: Complex<T>,
    pub p2: Complex<T>,
    /// `(p1 + p2) / 2`.
    pub p_bar: Complex<T>,
}

impl<T: Scalar> AmplitudePair<T> {
    pub fn new(p1: Complex<T>, p2: Complex<T>) -> Self {
        Self {
            p1,
            p2,
            p_bar: (p1 + p2) / T::lit(2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointFlag {
    Normal,
    TotalInternalReflection,
    Grazing,
}

impl PointFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            PointFlag::Normal => "normal",
            PointFlag::TotalInternalReflection => "total_internal_reflection",
            PointFlag::Grazing => "grazing",
        }
    }
}

impl std::fmt::Display for PointFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Energy coefficients at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraResult<T> {
    pub t: T,
    pub r: T,
    /// `1 - t - r`.
    pub a: T,
    pub flag: PointFlag,
    pub impedance: ImpedancePair<T>,
    pub amplitudes: AmplitudePair<T>,
}

fn amplitude<T: Scalar>(z: Complex<T>, g: &GeometryFactors<T>, which: &str) -> Result<Complex<T>> {
    let kz = z * g.k1x_factor;
    let den = kz - g.beta1;
    if den.norm() == T::zero() {
        return Err(Error::domain(
            "amplitudes",
            format!("singular denominator for {which}: sqrt(eps1) cos(theta) Z = beta1"),
        ));
    }
    Ok((kz + g.beta1) / den)
}

/// `p_j = (sqrt(eps1) cos(theta) Z_j + beta1) / (sqrt(eps1) cos(theta) Z_j - beta1)`.
pub fn amplitudes<T: Scalar>(
    z: &ImpedancePair<T>,
    cfg: &StackConfig<T>,
) -> Result<AmplitudePair<T>> {
    amplitudes_with(z, &GeometryFactors::new(cfg)?)
}

pub fn amplitudes_with<T: Scalar>(
    z: &ImpedancePair<T>,
    g: &GeometryFactors<T>,
) -> Result<AmplitudePair<T>> {
    Ok(AmplitudePair::new(
        amplitude(z.z1, g, "p1")?,
        amplitude(z.z2, g, "p2")?,
    ))
}

/// Reflectance of the stack.
pub fn reflectance<T: Scalar>(p: &AmplitudePair<T>, cfg: &StackConfig<T>) -> Result<T> {
    reflectance_with(p, &GeometryFactors::new(cfg)?)
}

pub fn reflectance_with<T: Scalar>(p: &AmplitudePair<T>, g: &GeometryFactors<T>) -> Result<T> {
    let den = g.denominator(p)?;
    let prod = p.p1 * p.p2;
    let num = g.k2_weight * (p.p_bar + prod) + (p.p_bar - prod) * g.k1_weight;
    Ok((num / den).norm_sqr())
}

/// Transmittance of the stack. Exactly zero under total internal reflection.
pub fn transmittance<T: Scalar>(p: &AmplitudePair<T>, cfg: &StackConfig<T>) -> Result<T> {
    transmittance_with(p, &GeometryFactors::new(cfg)?)
}

pub fn transmittance_with<T: Scalar>(p: &AmplitudePair<T>, g: &GeometryFactors<T>) -> Result<T> {
    let den = g.denominator(p)?;
    // Re(beta12 s) vanishes exactly when s is imaginary
    let flux = g.k2_weight.re;
    let t = flux * g.k1_weight * ((p.p1 - p.p2) / den).norm_sqr();
    Ok(t + T::zero())
}

pub fn absorptance<T: Scalar>(t: T, r: T) -> T {
    T::one() - t - r
}

/// Impedances, amplitudes and `T`, `R`, `A` at one point.
pub fn evaluate_point<T: Scalar>(
    cfg: &StackConfig<T>,
    omega: T,
    plasma: &PlasmaParams<T>,
    ctrl: &SeriesControl,
) -> Result<TraResult<T>> {
    evaluate_inner(cfg, omega, plasma, ctrl).map_err(|e| {
        e.with_context(format!(
            "at Omega = {omega}, theta = {} deg, d = {} nm, eps1 = {}, eps2 = {}",
            cfg.theta().to_degrees(),
            cfg.thickness_nm(),
            cfg.eps1(),
            cfg.eps2()
        ))
    })
}

fn evaluate_inner<T: Scalar>(
    cfg: &StackConfig<T>,
    omega: T,
    plasma: &PlasmaParams<T>,
    ctrl: &SeriesControl,
) -> Result<TraResult<T>> {
    let g = GeometryFactors::new(cfg)?;
    let impedance = impedance_pair(cfg, omega, plasma, ctrl)?;
    let p = amplitudes_with(&impedance, &g)?;
    let t = transmittance_with(&p, &g)?;
    let r = reflectance_with(&p, &g)?;
    let flag = if g.total_internal_reflection {
        PointFlag::TotalInternalReflection
    } else if cfg.theta().to_degrees() >= T::lit(GRAZING_THRESHOLD_DEG) {
        PointFlag::Grazing
    } else {
        PointFlag::Normal
    };
    Ok(TraResult {
        t,
        r,
        a: absorptance(t, r),
        flag,
        impedance,
        amplitudes: p,
    })
}
