//! Discrete multiple-relaxation parameters for band-limited power-law
//! acoustic attenuation.
//!
//! A fractional Zener compressibility is written as a continuous spectrum of
//! single relaxation processes. Sampling that spectrum at N log-spaced
//! frequencies inside the band of interest yields N relaxation mechanisms
//! whose combined attenuation follows α_k ∝ ω^η across the band.
//!
//! Every numeric routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use relaxfit_core::*;
//!
//! let medium = Medium::new(1540.0, 1050.0).unwrap();
//! let target = PowerLawTarget::new(
//!     1.1,
//!     attenuation_db_per_cm_to_np_per_m(0.3),
//!     hz_to_angular(1e6),
//!     hz_to_angular(1e5),
//!     hz_to_angular(3e7),
//! )
//! .unwrap();
//! let set = build_relaxation_set(&target, &medium, 3, SamplingMode::PowerLaw).unwrap();
//! let grid = make_log_grid(target.omega_lo(), target.omega_hi(), 200).unwrap();
//! let curve = set_dispersion_curve(&set, &medium, &grid).unwrap();
//! let (_, report) = normalize_to_target(&curve, &target, target.band()).unwrap();
//! assert!(report.max_rel_diff < 0.15);
//! ```

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod continuum;
pub mod discrete;
pub mod domain;
pub mod error;
pub mod quadrature;
pub mod root;
pub mod scalar;
pub mod zener;

pub use analysis::{
    attenuation_from_kappa, dispersion_curve, loglog_slope, max_rel_diff_unnormalized, normalize_to_target,
    phase_velocity_from_kappa, set_dispersion_curve, small_attenuation_attenuation, target_attenuation, wavenumber,
};
pub use continuum::{
    asymptotic_band_attenuation_check, bandlimited_equivalence_gap, continuum_compressibility, kappa_prime,
    regime_constants, relaxation_integrals,
};
pub use discrete::{
    build_relaxation_set, build_relaxation_set_with, calibrate, calibration_tolerance, discrete_compressibility,
    mechanism_attenuation, select_frequencies, step_sizes, Sampling, SamplingMode,
};
pub use domain::{
    angular_to_hz, attenuation_db_per_cm_to_np_per_m, attenuation_np_per_m_to_db_per_cm, hz_to_angular,
    make_log_grid, DB_PER_NEPER,
};
pub use error::{Error, Result};
pub use scalar::Real;
pub use zener::{regime_for_target, zener_compressibility, zener_regime_exponents, Regime};

pub type Medium = domain::Medium<f64>;
pub type PowerLawTarget = domain::PowerLawTarget<f64>;
pub type FrequencyGrid = domain::FrequencyGrid<f64>;
pub type ComplexCompressibility = domain::ComplexCompressibility<f64>;
pub type ZenerParams = zener::ZenerParams<f64>;
pub type RegimeExponents = zener::RegimeExponents<f64>;
pub type RegimeSelection = zener::RegimeSelection<f64>;
pub type Band = continuum::Band<f64>;
pub type ContinuousDistribution = continuum::ContinuousDistribution<f64>;
pub type DistributionKind = continuum::DistributionKind<f64>;
pub type RegimeConstants = continuum::RegimeConstants<f64>;
pub type AsymptoticSlopes = continuum::AsymptoticSlopes<f64>;
pub type RelaxationMechanism = discrete::RelaxationMechanism<f64>;
pub type RelaxationSet = discrete::RelaxationSet<f64>;
pub type Provenance = discrete::Provenance<f64>;
pub type BuildOptions = discrete::BuildOptions<f64>;
pub type DispersionCurve = analysis::DispersionCurve<f64>;
pub type FitReport = analysis::FitReport<f64>;
pub type LossModel<'a> = analysis::LossModel<'a, f64>;
pub type QuadratureOptions = quadrature::QuadratureOptions<f64>;
