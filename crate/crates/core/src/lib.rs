//! Transmittance, reflectance and absorptance of a P-polarized wave on a
//! thin metal film between two dielectric half-spaces.
//!
//! The film is a degenerate electron gas with specular surface scattering.
//! Its response enters through two surface impedances, computed as mode
//! sums over the standing-wave harmonics of the film ([`impedance`]) with
//! the nonlocal dielectric functions of [`dielectric`]. [`optics`] turns
//! the impedances into energy coefficients, [`sweep`] runs one-dimensional
//! parameter scans and [`oracle`] holds independent reference routes used
//! for validation.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod dielectric;
pub mod error;
pub mod impedance;
pub mod lattice;
pub mod optics;
pub mod oracle;
pub mod presets;
pub mod scalar;
pub mod summation;
pub mod sweep;
pub mod validation;

pub use dielectric::{drude_limit, eps_l, eps_tr, ComplexPermittivity, PlasmaParams};
pub use error::{Error, Parity, Result};
pub use impedance::{
    film_width_parameter, impedance_antisymmetric, impedance_pair, impedance_symmetric,
    impedance_term, mode_term, BetaConvention, ImpedancePair, ModeSeries, ModeTerm, SeriesControl,
    SeriesSum, StackConfig,
};
pub use optics::{
    absorptance, amplitudes, evaluate_point, reflectance, transmittance, AmplitudePair,
    GeometryFactors, PointFlag, TraResult,
};
pub use scalar::Scalar;
pub use sweep::{find_local_extrema, run_sweep, Execution, SweepAxis, SweepResult, SweepSpec};

pub type Complex64 = num_complex::Complex<f64>;

pub type Plasma = PlasmaParams<f64>;
pub type Stack = StackConfig<f64>;
pub type Impedances = ImpedancePair<f64>;
pub type Amplitudes = AmplitudePair<f64>;
pub type Geometry = GeometryFactors<f64>;
pub type Tra = TraResult<f64>;

pub type Plasma32 = PlasmaParams<f32>;
pub type Stack32 = StackConfig<f32>;
pub type Tra32 = TraResult<f32>;
