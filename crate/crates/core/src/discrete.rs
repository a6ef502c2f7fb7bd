//! Model-based selection of N discrete relaxation mechanisms.
//!
//! Relaxation frequencies are spread evenly in ln Ω over [Ω_L, Ω_H]; each
//! mechanism receives the relaxation density at its frequency times the
//! logarithmic step ΔΩ_ν, so the set is a quadrature of the continuous
//! distribution:
//!
//! κ̂_N(ω) = κ₀ − iω Σ κ_ν(Ω_ν)ΔΩ_ν / (Ω_ν + iω).
//!
//! A single scale factor on all weights is then tuned so the attenuation at
//! the reference frequency hits the target.

use crate::analysis::attenuation_from_kappa;
use crate::continuum::kappa_prime;
use crate::domain::{check_band, geometric_points, ComplexCompressibility, Medium, PowerLawTarget};
use crate::error::{Error, Result};
use crate::root::{find_root, RootOptions};
use crate::scalar::{lit, tight_tol, to_f64, Real};
use crate::zener::{regime_for_target, Regime, ZenerParams};

/// One relaxation process: frequency Ω_ν, sampled density κ_ν(Ω_ν), step ΔΩ_ν
/// and the resulting compressibility contribution κ_ν(Ω_ν)·ΔΩ_ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationMechanism<T> {
    omega_nu: T,
    density: T,
    step: T,
    weight: T,
}

impl<T: Real> RelaxationMechanism<T> {
    pub fn new(omega_nu: T, density: T, step: T) -> Result<Self> {
        if !(omega_nu > T::zero() && omega_nu.is_finite()) {
            return Err(Error::invalid("omega_nu", "must be positive and finite"));
        }
        if !(density >= T::zero() && density.is_finite()) {
            return Err(Error::invalid("density", "must be non-negative and finite"));
        }
        if !(step > T::zero() && step.is_finite()) {
            return Err(Error::invalid("step", "must be positive and finite"));
        }
        Ok(Self {
            omega_nu,
            density,
            step,
            weight: density * step,
        })
    }

    /// Rebuilds a mechanism from stored fields, checking weight = density·step.
    pub fn from_parts(omega_nu: T, density: T, step: T, weight: T) -> Result<Self> {
        let m = Self::new(omega_nu, density, step)?;
        let scale = m.weight.abs().max(T::min_positive_value());
        if ((weight - m.weight) / scale).abs() > tight_tol() {
            return Err(Error::invalid(
                "weight",
                format!(
                    "{:e} differs from density*step = {:e}",
                    to_f64(weight),
                    to_f64(m.weight)
                ),
            ));
        }
        Ok(Self { weight, ..m })
    }

    pub fn omega_nu(&self) -> T {
        self.omega_nu
    }

    pub fn density(&self) -> T {
        self.density
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    fn scaled(&self, s: T) -> Self {
        Self {
            density: self.density * s,
            weight: self.density * s * self.step,
            ..*self
        }
    }

    pub fn attenuation(&self, medium: &Medium<T>, omega: T) -> T {
        mechanism_attenuation(self, medium, omega)
    }
}

/// How densities are sampled at the chosen relaxation frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingMode {
    /// κ′_ν(Ω_ν) of the fractional Zener distribution.
    ZenerExact,
    /// C·Ω_ν^(η−2).
    PowerLaw,
}

impl SamplingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplingMode::ZenerExact => "zener_exact",
            SamplingMode::PowerLaw => "power_law",
        }
    }
}

/// The density model a set was sampled from, after calibration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling<T> {
    Zener {
        alpha: T,
        tau_sigma: T,
        /// Back-computed τ_ε; `None` when calibration demanded τ_ε^α < 0.
        tau_epsilon: Option<T>,
    },
    PowerLaw {
        amplitude: T,
        exponent: T,
    },
    /// α = 1 targets (η ∈ {0, 2}): one mechanism well outside the band.
    Impulse { omega_nu: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance<T> {
    pub target: PowerLawTarget<T>,
    pub mode: SamplingMode,
    pub regime: Regime,
    pub sampling: Sampling<T>,
    pub kappa0: T,
    /// Product of all calibration factors applied to the initial weights.
    pub calibration_scale: T,
}

impl<T: Real> Provenance<T> {
    /// Calibrated Zener parameters, when the set came from κ′_ν and τ_ε is
    /// representable.
    pub fn zener_params(&self) -> Option<ZenerParams<T>> {
        match self.sampling {
            Sampling::Zener {
                alpha,
                tau_sigma,
                tau_epsilon: Some(te),
            } => ZenerParams::symmetric(alpha, tau_sigma, te, self.kappa0).ok(),
            _ => None,
        }
    }

    fn rescaled(&self, s: T) -> Self {
        let sampling = match self.sampling {
            Sampling::Zener {
                alpha, tau_sigma, ..
            } => {
                // κ₀(τ_σ^α − τ_ε^α) started at κ₀τ_σ^α (τ_ε = 0).
                let total = self.calibration_scale * s;
                let te_pow = tau_sigma.powf(alpha) * (T::one() - total);
                Sampling::Zener {
                    alpha,
                    tau_sigma,
                    tau_epsilon: if te_pow >= T::zero() {
                        Some(te_pow.powf(T::one() / alpha))
                    } else {
                        None
                    },
                }
            }
            Sampling::PowerLaw {
                amplitude,
                exponent,
            } => Sampling::PowerLaw {
                amplitude: amplitude * s,
                exponent,
            },
            other => other,
        };
        Self {
            sampling,
            calibration_scale: self.calibration_scale * s,
            ..*self
        }
    }
}

/// Discrete relaxation mechanisms sorted by frequency, plus κ₀.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationSet<T> {
    mechanisms: Vec<RelaxationMechanism<T>>,
    kappa0: T,
    provenance: Option<Provenance<T>>,
}

impl<T: Real> RelaxationSet<T> {
    /// Requires strictly increasing Ω_ν and Σ weights < κ₀.
    pub fn new(mechanisms: Vec<RelaxationMechanism<T>>, kappa0: T) -> Result<Self> {
        if !(kappa0 > T::zero() && kappa0.is_finite()) {
            return Err(Error::invalid("kappa0", "must be positive"));
        }
        if mechanisms.windows(2).any(|w| w[1].omega_nu <= w[0].omega_nu) {
            return Err(Error::invalid(
                "mechanisms",
                "relaxation frequencies must be strictly increasing",
            ));
        }
        let total = mechanisms.iter().fold(T::zero(), |acc, m| acc + m.weight);
        if total >= kappa0 {
            return Err(Error::Physicality {
                reason: format!(
                    "sum of weights {:e} is not below kappa0 {:e}; the high-frequency \
                     compressibility would be non-positive",
                    to_f64(total),
                    to_f64(kappa0)
                ),
                max_attainable_alpha_ref: None,
            });
        }
        Ok(Self {
            mechanisms,
            kappa0,
            provenance: None,
        })
    }

    /// No mechanisms: a lossless medium.
    pub fn lossless(kappa0: T) -> Result<Self> {
        Self::new(Vec::new(), kappa0)
    }

    pub fn with_provenance(mut self, provenance: Provenance<T>) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn mechanisms(&self) -> &[RelaxationMechanism<T>] {
        &self.mechanisms
    }

    pub fn len(&self) -> usize {
        self.mechanisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mechanisms.is_empty()
    }

    pub fn kappa0(&self) -> T {
        self.kappa0
    }

    pub fn provenance(&self) -> Option<&Provenance<T>> {
        self.provenance.as_ref()
    }

    pub fn total_weight(&self) -> T {
        self.mechanisms.iter().fold(T::zero(), |acc, m| acc + m.weight)
    }

    /// Every weight multiplied by `s`.
    pub fn scaled(&self, s: T) -> Result<Self> {
        if !(s > T::zero() && s.is_finite()) {
            return Err(Error::invalid("scale", "must be positive and finite"));
        }
        let set = Self::new(
            self.mechanisms.iter().map(|m| m.scaled(s)).collect(),
            self.kappa0,
        )?;
        Ok(Self {
            provenance: self.provenance.map(|p| p.rescaled(s)),
            ..set
        })
    }

    pub fn compressibility(&self, omega: T) -> ComplexCompressibility<T> {
        discrete_compressibility(self, omega)
    }

    /// Σ of the decoupled per-mechanism attenuations.
    pub fn summed_mechanism_attenuation(&self, medium: &Medium<T>, omega: T) -> T {
        self.mechanisms
            .iter()
            .fold(T::zero(), |acc, m| acc + mechanism_attenuation(m, medium, omega))
    }
}

/// Ω_ν = Ω_L^((N−ν)/(N−1))·Ω_H^((ν−1)/(N−1)); the geometric mean for N = 1.
pub fn select_frequencies<T: Real>(n: usize, omega_lo: T, omega_hi: T) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::invalid("n", "at least one mechanism is required"));
    }
    check_band(omega_lo, omega_hi)?;
    if n == 1 {
        return Ok(vec![(omega_lo * omega_hi).sqrt()]);
    }
    Ok(geometric_points(omega_lo, omega_hi, n))
}

/// ΔΩ_ν = Ω_ν(1 − (Ω_L/Ω_H)^(1/(N−1))); Ω_H − Ω_L for a single mechanism.
pub fn step_sizes<T: Real>(frequencies: &[T], omega_lo: T, omega_hi: T) -> Result<Vec<T>> {
    check_band(omega_lo, omega_hi)?;
    match frequencies.len() {
        0 => Err(Error::invalid("frequencies", "empty")),
        1 => Ok(vec![omega_hi - omega_lo]),
        n => {
            let factor = T::one() - (omega_lo / omega_hi).powf(T::one() / T::from_usize(n - 1).unwrap());
            Ok(frequencies.iter().map(|&w| w * factor).collect())
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions<T> {
    /// Factor by which 1/τ_σ is placed outside the band edge.
    pub tau_sigma_margin: T,
}

impl<T: Real> Default for BuildOptions<T> {
    fn default() -> Self {
        Self {
            tau_sigma_margin: lit(1e3),
        }
    }
}

pub fn build_relaxation_set<T: Real>(
    target: &PowerLawTarget<T>,
    medium: &Medium<T>,
    n: usize,
    mode: SamplingMode,
) -> Result<RelaxationSet<T>> {
    build_relaxation_set_with(target, medium, n, mode, &BuildOptions::default())
}

/// Samples `n` mechanisms over the target band and calibrates them to the
/// reference attenuation.
///
/// In [`SamplingMode::ZenerExact`] an η = 1 target falls back to the Ω^(−1)
/// power law, and η ∈ {0, 2} (α = 1, where κ′_ν vanishes) produces one
/// mechanism `tau_sigma_margin` outside the band regardless of `n`.
pub fn build_relaxation_set_with<T: Real>(
    target: &PowerLawTarget<T>,
    medium: &Medium<T>,
    n: usize,
    mode: SamplingMode,
    opts: &BuildOptions<T>,
) -> Result<RelaxationSet<T>> {
    if !(opts.tau_sigma_margin >= T::one()) {
        return Err(Error::invalid("tau_sigma_margin", "must be at least 1"));
    }
    let (lo, hi) = target.band();
    let freqs = select_frequencies(n, lo, hi)?;
    let steps = step_sizes(&freqs, lo, hi)?;
    let selection = regime_for_target(target.eta())?;
    let kappa0 = medium.kappa0();
    // Initial weights sum to this before calibration.
    let seed_total = kappa0 * lit(1e-3);

    let (mechanisms, sampling) = match (mode, selection.alpha) {
        (SamplingMode::ZenerExact, Some(alpha)) if alpha >= T::one() => {
            let omega_nu = match selection.regime {
                Regime::Low => hi * opts.tau_sigma_margin,
                _ => lo / opts.tau_sigma_margin,
            };
            let step = hi - lo;
            let m = RelaxationMechanism::new(omega_nu, seed_total / step, step)?;
            (vec![m], Sampling::Impulse { omega_nu })
        }
        (SamplingMode::ZenerExact, Some(alpha)) => {
            let tau_sigma = selection
                .tau_sigma(lo, hi, opts.tau_sigma_margin)
                .expect("regime with alpha has a placement");
            let params = ZenerParams::symmetric(alpha, tau_sigma, T::zero(), kappa0)?;
            let ms = freqs
                .iter()
                .zip(&steps)
                .map(|(&w, &dw)| RelaxationMechanism::new(w, kappa_prime(&params, w)?, dw))
                .collect::<Result<Vec<_>>>()?;
            (
                ms,
                Sampling::Zener {
                    alpha,
                    tau_sigma,
                    tau_epsilon: Some(T::zero()),
                },
            )
        }
        _ => {
            let exponent = selection.distribution_exponent;
            let raw: T = freqs
                .iter()
                .zip(&steps)
                .fold(T::zero(), |acc, (&w, &dw)| acc + w.powf(exponent) * dw);
            let amplitude = seed_total / raw;
            let ms = freqs
                .iter()
                .zip(&steps)
                .map(|(&w, &dw)| RelaxationMechanism::new(w, amplitude * w.powf(exponent), dw))
                .collect::<Result<Vec<_>>>()?;
            (
                ms,
                Sampling::PowerLaw {
                    amplitude,
                    exponent,
                },
            )
        }
    };

    let provenance = Provenance {
        target: *target,
        mode,
        regime: selection.regime,
        sampling,
        kappa0,
        calibration_scale: T::one(),
    };
    // A Zener seed with τ_ε = 0 can carry more than κ₀; bring it down to the
    // common starting level first.
    let total = mechanisms.iter().fold(T::zero(), |acc, m| acc + m.weight);
    let pre = if total > seed_total { seed_total / total } else { T::one() };
    let mechanisms = mechanisms.iter().map(|m| m.scaled(pre)).collect();
    let set = RelaxationSet::new(mechanisms, kappa0)?.with_provenance(provenance.rescaled(pre));
    calibrate(&set, target, medium)
}

/// Relative accuracy demanded of α_k(ω_ref).
pub fn calibration_tolerance<T: Real>() -> T {
    lit::<T>(1e-9).max(T::epsilon() * lit(64.0))
}

/// Scales all weights by one factor so that α_k(ω_ref) = α_ref. Equivalent to
/// tuning τ_ε through κ₀(τ_σ^α − τ_ε^α), which is linear in the weights.
pub fn calibrate<T: Real>(
    set: &RelaxationSet<T>,
    target: &PowerLawTarget<T>,
    medium: &Medium<T>,
) -> Result<RelaxationSet<T>> {
    if set.is_empty() {
        return Err(Error::Calibration("a lossless set cannot be calibrated".into()));
    }
    let total = set.total_weight();
    if !(total > T::zero()) {
        return Err(Error::Calibration("all weights are zero".into()));
    }
    let w_ref = target.omega_ref();
    let a_ref = target.alpha_ref();
    let tol = calibration_tolerance::<T>();

    let attenuation_at = |s: T| -> Result<T> {
        let k = scaled_compressibility(set, s, w_ref);
        attenuation_from_kappa(k, medium, w_ref)
    };
    let mismatch = |u: T| -> Result<T> { Ok((attenuation_at(u.exp())? / a_ref).ln()) };

    let start = attenuation_at(T::one())?;
    if ((start - a_ref) / a_ref).abs() <= tol {
        return Ok(set.clone());
    }

    // Physical ceiling: Σ s·w < κ₀.
    let u_max = (set.kappa0() / total).ln() + (T::one() - lit::<T>(1e-9)).ln();
    let max_attainable = attenuation_at(u_max.exp())?;
    if max_attainable < a_ref {
        return Err(Error::Physicality {
            reason: format!(
                "reference attenuation {:e} Np/m needs sum of weights >= kappa0; at most {:e} Np/m \
                 is attainable with these mechanisms",
                to_f64(a_ref),
                to_f64(max_attainable)
            ),
            max_attainable_alpha_ref: Some(to_f64(max_attainable)),
        });
    }

    // Bracket in u = ln s, doubling |u| from ln 2 (s = 2, 4, 16, …).
    let mut span = T::LN_2();
    let (mut lo, mut hi) = (T::zero(), T::zero());
    let rising = start < a_ref;
    let mut bracketed = false;
    for _ in 0..16 {
        if rising {
            hi = span.min(u_max);
            if mismatch(hi)? >= T::zero() {
                bracketed = true;
                break;
            }
            lo = hi;
        } else {
            lo = -span;
            if mismatch(lo)? <= T::zero() {
                bracketed = true;
                break;
            }
            hi = lo;
        }
        span = span * lit(2.0);
    }
    if !bracketed {
        return Err(Error::Calibration(format!(
            "could not bracket the scale factor (last interval ln s in [{:e}, {:e}])",
            to_f64(lo),
            to_f64(hi)
        )));
    }

    let root = find_root(
        mismatch,
        lo,
        hi,
        &RootOptions {
            f_tol: tol / lit(10.0),
            x_tol: T::epsilon() * lit(4.0) * (T::one() + lo.abs().max(hi.abs())),
            max_iter: 200,
        },
    )?;
    let calibrated = set.scaled(root.x.exp())?;
    let achieved = attenuation_at(root.x.exp())?;
    if ((achieved - a_ref) / a_ref).abs() > tol {
        return Err(Error::Calibration(format!(
            "reached {:e} Np/m for target {:e} Np/m",
            to_f64(achieved),
            to_f64(a_ref)
        )));
    }
    Ok(calibrated)
}

fn scaled_compressibility<T: Real>(set: &RelaxationSet<T>, s: T, omega: T) -> ComplexCompressibility<T> {
    let (re, im) = loss_sums(set, omega);
    ComplexCompressibility::new(set.kappa0 - s * re, -s * im)
}

/// (Σ w·u²/(1+u²), Σ w·u/(1+u²)) with u = ω/Ω_ν.
fn loss_sums<T: Real>(set: &RelaxationSet<T>, omega: T) -> (T, T) {
    set.mechanisms.iter().fold((T::zero(), T::zero()), |(re, im), m| {
        let u = omega / m.omega_nu;
        let den = T::one() + u * u;
        (re + m.weight * u * u / den, im + m.weight * u / den)
    })
}

pub fn discrete_compressibility<T: Real>(set: &RelaxationSet<T>, omega: T) -> ComplexCompressibility<T> {
    if omega == T::zero() {
        return ComplexCompressibility::real(set.kappa0);
    }
    let (re, im) = loss_sums(set, omega);
    ComplexCompressibility::new(set.kappa0 - re, -im)
}

/// A·κ_νΩ_νω²/(ω² + Ω_ν²) with A = √(ρ₀/κ₀)/2.
pub fn mechanism_attenuation<T: Real>(m: &RelaxationMechanism<T>, medium: &Medium<T>, omega: T) -> T {
    let u = omega / m.omega_nu;
    medium.loss_scale() * m.weight * m.omega_nu * u * u / (T::one() + u * u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{attenuation_db_per_cm_to_np_per_m, hz_to_angular};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn table_medium() -> Medium<f64> {
        Medium::new(1540.0, 1050.0).unwrap()
    }

    fn table_target(f_lo: f64, f_hi: f64) -> PowerLawTarget<f64> {
        PowerLawTarget::new(
            1.1,
            attenuation_db_per_cm_to_np_per_m(0.3),
            hz_to_angular(1e6),
            hz_to_angular(f_lo),
            hz_to_angular(f_hi),
        )
        .unwrap()
    }

    #[test]
    fn frequency_selection_examples() {
        let f = select_frequencies(3, 0.1, 30.0).unwrap();
        assert!(rel(f[0], 0.1) < 1e-15);
        assert!(rel(f[1], 1.732_050_807_568_877) < 1e-12);
        assert!(rel(f[2], 30.0) < 1e-15);
        assert_eq!(select_frequencies(2, 0.1, 30.0).unwrap(), vec![0.1, 30.0]);
        let f = select_frequencies(1, 0.1, 30.0).unwrap();
        assert!(rel(f[0], 3f64.sqrt()) < 1e-15);
        assert!(select_frequencies(0, 0.1, 30.0).is_err());
    }

    #[test]
    fn step_size_examples() {
        let s = step_sizes(&[0.1, 30.0], 0.1, 30.0).unwrap();
        assert!(rel(s[0], 0.1 * (1.0 - 1.0 / 300.0)) < 1e-14);
        assert!(rel(s[1], 29.9) < 1e-14);
        let f = select_frequencies(3, 1.0, 100.0).unwrap();
        let s = step_sizes(&f, 1.0, 100.0).unwrap();
        for (got, want) in s.iter().zip([0.9, 9.0, 90.0]) {
            assert!(rel(*got, want) < 1e-14);
        }
        let f = select_frequencies(7, 2.0, 5e4).unwrap();
        let s = step_sizes(&f, 2.0, 5e4).unwrap();
        let r0 = s[0] / f[0];
        assert!(s.iter().zip(&f).all(|(a, b)| rel(a / b, r0) < 1e-14));
        assert_eq!(step_sizes(&[3.0], 1.0, 10.0).unwrap(), vec![9.0]);
    }

    #[test]
    fn compressibility_examples() {
        let empty = RelaxationSet::lossless(2.0).unwrap();
        assert_eq!(empty.compressibility(5.0).value(), num_complex::Complex::new(2.0, 0.0));

        let m = RelaxationMechanism::new(3.0f64, 0.25, 0.4).unwrap();
        let set = RelaxationSet::new(vec![m], 1.0).unwrap();
        let k = set.compressibility(3.0);
        assert!((k.re() - (1.0 - 0.05)).abs() < 1e-15);
        assert!((k.im() + 0.05).abs() < 1e-15);

        let ms = vec![
            RelaxationMechanism::new(1.0, 0.1, 1.0).unwrap(),
            RelaxationMechanism::new(10.0, 0.02, 10.0).unwrap(),
        ];
        let set = RelaxationSet::new(ms, 1.0).unwrap();
        let k = set.compressibility(1e9 * 10.0);
        assert!(rel(k.re(), 1.0 - 0.3) < 1e-8);
        assert_eq!(set.compressibility(0.0).re(), 1.0);
    }

    #[test]
    fn set_invariants_enforced() {
        let a = RelaxationMechanism::new(1.0, 0.1, 1.0).unwrap();
        let b = RelaxationMechanism::new(2.0, 0.1, 1.0).unwrap();
        assert!(RelaxationSet::new(vec![b, a], 1.0).is_err());
        assert!(RelaxationSet::new(vec![a, a], 1.0).is_err());
        assert!(matches!(
            RelaxationSet::new(vec![a, b], 0.2),
            Err(Error::Physicality { .. })
        ));
        assert!(RelaxationMechanism::new(0.0, 1.0, 1.0).is_err());
        assert!(RelaxationMechanism::new(1.0, -1.0, 1.0).is_err());
        assert!(RelaxationMechanism::new(1.0, 1.0, 0.0).is_err());
        assert!(RelaxationMechanism::from_parts(1.0, 2.0, 3.0, 6.0).is_ok());
        assert!(RelaxationMechanism::from_parts(1.0, 2.0, 3.0, 6.1).is_err());
    }

    #[test]
    fn mechanism_attenuation_examples() {
        let med = table_medium();
        let m = RelaxationMechanism::new(5e6, 1e-19, 2e6).unwrap();
        let a = mechanism_attenuation(&m, &med, 5e6);
        assert!(rel(a, med.loss_scale() * m.weight() * 5e6 / 2.0) < 1e-14);
        assert_eq!(mechanism_attenuation(&m, &med, 0.0), 0.0);
    }

    #[test]
    fn table_fit_reaches_reference() {
        let med = table_medium();
        let t = table_target(1e5, 3e7);
        for mode in [SamplingMode::PowerLaw, SamplingMode::ZenerExact] {
            for n in 1..=4 {
                let set = build_relaxation_set(&t, &med, n, mode).unwrap();
                assert_eq!(set.len(), n);
                let a = attenuation_from_kappa(set.compressibility(t.omega_ref()), &med, t.omega_ref()).unwrap();
                assert!(rel(a, t.alpha_ref()) <= 1e-9, "{mode:?} n={n}");
                assert!(set.total_weight() < med.kappa0());
            }
        }
    }

    #[test]
    fn table_weights_match_published_magnitudes() {
        // Published N = 3 weights: 1.0, 1.3, 1.8 (TPa)^-1.
        let set = build_relaxation_set(&table_target(1e5, 3e7), &table_medium(), 3, SamplingMode::PowerLaw).unwrap();
        let w: Vec<f64> = set.mechanisms().iter().map(|m| m.weight() * 1e12).collect();
        for (got, published) in w.iter().zip([1.0, 1.3, 1.8]) {
            assert!(rel(*got, published) < 0.15, "{got} vs {published}");
        }
        // Power-law weights grow as Ω^(η−1).
        assert!(rel(w[2] / w[0], 300f64.powf(0.1)) < 1e-12);
    }

    #[test]
    fn calibration_is_a_fixed_point() {
        let med = table_medium();
        let t = table_target(1e5, 3e7);
        let set = build_relaxation_set(&t, &med, 3, SamplingMode::PowerLaw).unwrap();
        let again = calibrate(&set, &t, &med).unwrap();
        assert_eq!(set, again);
    }

    #[test]
    fn doubling_reference_doubles_weights() {
        let med = table_medium();
        let t = table_target(1e5, 3e7);
        let set = build_relaxation_set(&t, &med, 3, SamplingMode::PowerLaw).unwrap();
        // Small-attenuation regime: α_k·c₀/ω ≈ 3.45·1540/6.3e6 ≈ 8e-4.
        assert!(t.alpha_ref() * med.c0() / t.omega_ref() <= 1e-3);
        let t2 = t.with_alpha_ref(2.0 * t.alpha_ref()).unwrap();
        let set2 = calibrate(&set, &t2, &med).unwrap();
        for (a, b) in set.mechanisms().iter().zip(set2.mechanisms()) {
            assert!(rel(b.weight() / a.weight(), 2.0) < 0.01);
        }
    }

    #[test]
    fn unreachable_reference_is_a_physicality_error() {
        let med = table_medium();
        let t = table_target(1e5, 3e7).with_alpha_ref(1e6).unwrap();
        let err = build_relaxation_set(&t, &med, 3, SamplingMode::PowerLaw).unwrap_err();
        match err {
            Error::Physicality {
                max_attainable_alpha_ref: Some(max),
                ..
            } => assert!(max < 1e6 && max > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zener_provenance_reports_tau_epsilon() {
        let set = build_relaxation_set(&table_target(1e5, 3e7), &table_medium(), 3, SamplingMode::ZenerExact).unwrap();
        let prov = set.provenance().unwrap();
        let p = prov.zener_params().expect("representable");
        assert!((p.alpha() - 0.1).abs() < 1e-12);
        assert!(p.tau_epsilon() > 0.0 && p.tau_epsilon() < p.tau_sigma());
        // Weights are κ′_ν of the reported parameters times the step.
        for m in set.mechanisms() {
            let d = kappa_prime(&p, m.omega_nu()).unwrap();
            assert!(rel(m.density(), d) < 1e-9);
        }
    }

    #[test]
    fn zener_kappa_prime_fixture() {
        // κ′_ν at Ω = 2π·1 MHz for the calibrated N = 3 Zener-mode set,
        // equal to the stored density of the middle mechanism scaled by
        // (Ω₂/Ω)^(1−α)·(D(Ω₂)/D(Ω)).
        let set = build_relaxation_set(&table_target(1e5, 3e7), &table_medium(), 3, SamplingMode::ZenerExact).unwrap();
        let p = set.provenance().unwrap().zener_params().unwrap();
        let w = hz_to_angular(1e6);
        let v = kappa_prime(&p, w).unwrap();
        let den = |om: f64| {
            let x = (p.tau_sigma() * om).powf(0.1);
            x * x + 2.0 * x * (0.1 * std::f64::consts::PI).cos() + 1.0
        };
        let mid = set.mechanisms()[1];
        let expect = mid.density() * (mid.omega_nu() / w).powf(0.9) * den(mid.omega_nu()) / den(w);
        assert!(rel(v, expect) < 1e-12);
    }

    #[test]
    fn unit_exponent_uses_inverse_power_law() {
        let med = table_medium();
        let t = PowerLawTarget::new(1.0, 5.0, 1e6, 1e5, 1e7).unwrap();
        let set = build_relaxation_set(&t, &med, 5, SamplingMode::ZenerExact).unwrap();
        let prov = set.provenance().unwrap();
        assert_eq!(prov.regime, Regime::Unified);
        assert!(matches!(prov.sampling, Sampling::PowerLaw { exponent, .. } if exponent == -1.0));
        // Ω^-1 density times a step ∝ Ω gives equal weights.
        let w0 = set.mechanisms()[0].weight();
        assert!(set.mechanisms().iter().all(|m| rel(m.weight(), w0) < 1e-12));
    }

    #[test]
    fn quadratic_target_becomes_single_impulse() {
        let med = table_medium();
        let t = PowerLawTarget::new(2.0, 1e-3, 1e6, 1e5, 1e7).unwrap();
        let set = build_relaxation_set(&t, &med, 4, SamplingMode::ZenerExact).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.mechanisms()[0].omega_nu() >= 1e10);
    }

    #[test]
    fn single_mechanism_sits_at_geometric_mean() {
        let set = build_relaxation_set(&table_target(1e5, 3e7), &table_medium(), 1, SamplingMode::PowerLaw).unwrap();
        let m = set.mechanisms()[0];
        assert!(rel(m.omega_nu(), hz_to_angular((1e5f64 * 3e7).sqrt())) < 1e-12);
        assert!(rel(m.step(), hz_to_angular(3e7 - 1e5)) < 1e-12);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn f32_fit() {
        let med = Medium::<f32>::new(1540.0, 1050.0).unwrap();
        let t = PowerLawTarget::<f32>::new(1.1, 3.4538776, 6.2831853e6, 6.2831853e5, 1.8849556e8).unwrap();
        let set = build_relaxation_set(&t, &med, 3, SamplingMode::PowerLaw).unwrap();
        let a = attenuation_from_kappa(set.compressibility(t.omega_ref()), &med, t.omega_ref()).unwrap();
        assert!(((a - t.alpha_ref()) / t.alpha_ref()).abs() < 1e-4);
    }
}
