//! Dispersion pipeline and fit metrics.
//!
//! k = ω√ρ₀·√κ with the principal root, α_k = −Im k, c_p = ω/Re k.

use num_complex::Complex;

use crate::continuum::ContinuousDistribution;
use crate::discrete::RelaxationSet;
use crate::domain::{ComplexCompressibility, FrequencyGrid, Medium, PowerLawTarget};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

fn checked_sqrt<T: Real>(kappa: ComplexCompressibility<T>) -> Result<Complex<T>> {
    let (re, im) = (kappa.re(), kappa.im());
    if !(re.is_finite() && im.is_finite()) {
        return Err(Error::UnphysicalCompressibility(format!(
            "non-finite compressibility {:e}{:+e}i",
            to_f64(re),
            to_f64(im)
        )));
    }
    if im > T::zero() {
        return Err(Error::UnphysicalCompressibility(format!(
            "positive imaginary part {:e} would amplify the wave",
            to_f64(im)
        )));
    }
    if re <= T::zero() && im == T::zero() {
        return Err(Error::UnphysicalCompressibility(format!(
            "real compressibility {:e} is not positive",
            to_f64(re)
        )));
    }
    Ok(kappa.value().sqrt())
}

/// k = ω√ρ₀√κ; Re k ≥ 0 and Im k ≤ 0.
pub fn wavenumber<T: Real>(kappa: ComplexCompressibility<T>, medium: &Medium<T>, omega: T) -> Result<Complex<T>> {
    if !(omega >= T::zero()) {
        return Err(Error::invalid("omega", "must be non-negative"));
    }
    Ok(checked_sqrt(kappa)? * (omega * medium.rho0().sqrt()))
}

/// α_k = −ω√ρ₀·Im√κ in Np/m.
pub fn attenuation_from_kappa<T: Real>(kappa: ComplexCompressibility<T>, medium: &Medium<T>, omega: T) -> Result<T> {
    Ok(-wavenumber(kappa, medium, omega)?.im)
}

/// c_p = 1/(√ρ₀·Re√κ) in m/s.
pub fn phase_velocity_from_kappa<T: Real>(kappa: ComplexCompressibility<T>, medium: &Medium<T>) -> Result<T> {
    Ok(T::one() / (medium.rho0().sqrt() * checked_sqrt(kappa)?.re))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurve<T> {
    pub grid: FrequencyGrid<T>,
    pub attenuation: Vec<T>,
    pub phase_velocity: Vec<T>,
}

impl<T: Real> DispersionCurve<T> {
    /// Same phase velocities, attenuation multiplied by `c`.
    pub fn with_attenuation_scaled(&self, c: T) -> Self {
        Self {
            attenuation: self.attenuation.iter().map(|&a| a * c).collect(),
            ..self.clone()
        }
    }
}

pub fn dispersion_curve<T, F>(kappa_fn: F, medium: &Medium<T>, grid: &FrequencyGrid<T>) -> Result<DispersionCurve<T>>
where
    T: Real,
    F: Fn(T) -> Result<ComplexCompressibility<T>>,
{
    let mut attenuation = Vec::with_capacity(grid.len());
    let mut phase_velocity = Vec::with_capacity(grid.len());
    for w in grid.iter() {
        let k = kappa_fn(w)?;
        attenuation.push(attenuation_from_kappa(k, medium, w)?);
        phase_velocity.push(phase_velocity_from_kappa(k, medium)?);
    }
    Ok(DispersionCurve {
        grid: grid.clone(),
        attenuation,
        phase_velocity,
    })
}

/// Exact dispersion of a discrete set over a grid.
pub fn set_dispersion_curve<T: Real>(
    set: &RelaxationSet<T>,
    medium: &Medium<T>,
    grid: &FrequencyGrid<T>,
) -> Result<DispersionCurve<T>> {
    dispersion_curve(|w| Ok(set.compressibility(w)), medium, grid)
}

/// A relaxation model whose loss term can be evaluated.
#[derive(Debug, Clone, Copy)]
pub enum LossModel<'a, T> {
    Discrete(&'a RelaxationSet<T>),
    Continuum {
        dist: &'a ContinuousDistribution<T>,
        tol: T,
    },
}

/// A·ω²·Σ κ_νΩ_ν/(Ω_ν² + ω²), or the integral form, with A = √(ρ₀/κ₀)/2.
pub fn small_attenuation_attenuation<T: Real>(model: LossModel<'_, T>, medium: &Medium<T>, omega: T) -> Result<T> {
    if omega == T::zero() {
        return Ok(T::zero());
    }
    let kappa = match model {
        LossModel::Discrete(set) => set.compressibility(omega),
        LossModel::Continuum { dist, tol } => dist.compressibility(omega, tol)?,
    };
    // −Im κ = ω·(loss integral).
    Ok(medium.loss_scale() * omega * -kappa.im())
}

pub fn target_attenuation<T: Real>(target: &PowerLawTarget<T>, omega: T) -> T {
    target.attenuation(omega)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport<T> {
    /// max |r| over the in-band samples.
    pub max_rel_diff: T,
    pub normalization_scale: T,
    /// Frequencies of the in-band samples.
    pub omega: Vec<T>,
    /// r = s·g − 1 at each in-band sample.
    pub per_sample_rel_diff: Vec<T>,
    pub band: (T, T),
}

/// (ω, g = α_k/α_target) for grid samples with ω in the closed band.
fn band_ratios<T: Real>(curve: &DispersionCurve<T>, target: &PowerLawTarget<T>, band: (T, T)) -> Result<Vec<(T, T)>> {
    let (lo, hi) = band;
    if !(lo > T::zero() && hi >= lo) {
        return Err(Error::invalid("band", "must satisfy 0 < lo <= hi"));
    }
    let ratios: Vec<(T, T)> = curve
        .grid
        .iter()
        .zip(&curve.attenuation)
        .filter(|(w, _)| *w >= lo && *w <= hi)
        .map(|(w, &a)| (w, a / target.attenuation(w)))
        .collect();
    if ratios.is_empty() {
        return Err(Error::invalid("band", "contains no grid samples"));
    }
    if let Some((w, g)) = ratios.iter().find(|(_, g)| !(*g > T::zero() && g.is_finite())) {
        return Err(Error::DegenerateDistribution(format!(
            "attenuation ratio {:e} at {:e} rad/s is not positive",
            to_f64(*g),
            to_f64(*w)
        )));
    }
    Ok(ratios)
}

/// Scales the curve so the largest over- and undershoot relative to the
/// target are equal in magnitude: s = 2/(max g + min g).
pub fn normalize_to_target<T: Real>(
    curve: &DispersionCurve<T>,
    target: &PowerLawTarget<T>,
    band: (T, T),
) -> Result<(T, FitReport<T>)> {
    let ratios = band_ratios(curve, target, band)?;
    let (gmin, gmax) = ratios
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(a, b), &(_, g)| (a.min(g), b.max(g)));
    let s = lit::<T>(2.0) / (gmax + gmin);
    let per_sample: Vec<T> = ratios.iter().map(|&(_, g)| s * g - T::one()).collect();
    let max_rel_diff = per_sample.iter().fold(T::zero(), |m, r| m.max(r.abs()));
    Ok((
        s,
        FitReport {
            max_rel_diff,
            normalization_scale: s,
            omega: ratios.iter().map(|&(w, _)| w).collect(),
            per_sample_rel_diff: per_sample,
            band,
        },
    ))
}

/// max |g − 1| over the band.
pub fn max_rel_diff_unnormalized<T: Real>(
    curve: &DispersionCurve<T>,
    target: &PowerLawTarget<T>,
    band: (T, T),
) -> Result<T> {
    Ok(band_ratios(curve, target, band)?
        .iter()
        .fold(T::zero(), |m, &(_, g)| m.max((g - T::one()).abs())))
}

/// Least-squares slope of ln α_k against ln ω over the in-band samples.
pub fn loglog_slope<T: Real>(curve: &DispersionCurve<T>, band: (T, T)) -> Result<T> {
    let (lo, hi) = band;
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::invalid("band", "must satisfy 0 < lo < hi"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (w, &a) in curve.grid.iter().zip(&curve.attenuation) {
        if w >= lo && w <= hi {
            if !(a > T::zero()) {
                return Err(Error::DegenerateDistribution(format!(
                    "attenuation {:e} at {:e} rad/s is not positive",
                    to_f64(a),
                    to_f64(w)
                )));
            }
            xs.push(w.ln());
            ys.push(a.ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::invalid("band", "needs at least two grid samples"));
    }
    Ok(least_squares_slope(&xs, &ys))
}

pub(crate) fn least_squares_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = T::from_usize(xs.len()).unwrap();
    let mx = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let my = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let (sxy, sxx) = xs.iter().zip(ys).fold((T::zero(), T::zero()), |(sxy, sxx), (&x, &y)| {
        let dx = x - mx;
        (sxy + dx * (y - my), sxx + dx * dx)
    });
    sxy / sxx
}
