//! Domain types shared by the model, fitting and analysis code.
//!
//! All frequencies are angular (rad/s). Compressibilities are stored in Pa⁻¹
//! and attenuations in Np/m; display units only appear at report boundaries.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, tight_tol, to_f64, Real};

/// 20·log10(e): decibels per neper.
pub const DB_PER_NEPER: f64 = 8.685_889_638_065_037;

/// Equilibrium acoustic medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium<T> {
    c0: T,
    rho0: T,
    kappa0: T,
}

impl<T: Real> Medium<T> {
    /// Medium from sound speed (m/s) and density (kg/m³); κ₀ = 1/(c₀²ρ₀).
    pub fn new(c0: T, rho0: T) -> Result<Self> {
        check_positive("c0", c0)?;
        check_positive("rho0", rho0)?;
        Ok(Self {
            c0,
            rho0,
            kappa0: T::one() / (c0 * c0 * rho0),
        })
    }

    /// Medium with an explicitly supplied κ₀, which must agree with c₀ and ρ₀.
    pub fn with_kappa0(c0: T, rho0: T, kappa0: T) -> Result<Self> {
        let m = Self::new(c0, rho0)?;
        check_positive("kappa0", kappa0)?;
        if ((kappa0 - m.kappa0) / m.kappa0).abs() > tight_tol() {
            return Err(Error::invalid(
                "kappa0",
                format!(
                    "{:e} is inconsistent with 1/(c0^2 rho0) = {:e}",
                    to_f64(kappa0),
                    to_f64(m.kappa0)
                ),
            ));
        }
        Ok(m)
    }

    pub fn c0(&self) -> T {
        self.c0
    }

    pub fn rho0(&self) -> T {
        self.rho0
    }

    pub fn kappa0(&self) -> T {
        self.kappa0
    }

    /// Small-attenuation scale A = √(ρ₀/κ₀)/2 = 1/(2c₀κ₀).
    pub fn loss_scale(&self) -> T {
        (self.rho0 / self.kappa0).sqrt() / lit(2.0)
    }
}

/// Desired attenuation law α(ω) = α_ref·(ω/ω_ref)^η on the band [Ω_L, Ω_H].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawTarget<T> {
    eta: T,
    alpha_ref: T,
    omega_ref: T,
    omega_lo: T,
    omega_hi: T,
}

impl<T: Real> PowerLawTarget<T> {
    pub fn new(eta: T, alpha_ref: T, omega_ref: T, omega_lo: T, omega_hi: T) -> Result<Self> {
        if !(eta >= T::zero() && eta <= lit(2.0)) {
            return Err(Error::invalid("eta", format!("{} is outside [0, 2]", eta)));
        }
        check_positive("alpha_ref", alpha_ref)?;
        check_band(omega_lo, omega_hi)?;
        if !(omega_ref >= omega_lo && omega_ref <= omega_hi) {
            return Err(Error::invalid(
                "omega_ref",
                format!(
                    "{:e} rad/s lies outside the band [{:e}, {:e}]",
                    to_f64(omega_ref),
                    to_f64(omega_lo),
                    to_f64(omega_hi)
                ),
            ));
        }
        Ok(Self {
            eta,
            alpha_ref,
            omega_ref,
            omega_lo,
            omega_hi,
        })
    }

    /// Same law and reference point over a different band.
    pub fn with_band(&self, omega_lo: T, omega_hi: T) -> Result<Self> {
        Self::new(self.eta, self.alpha_ref, self.omega_ref, omega_lo, omega_hi)
    }

    /// Same law with a different reference attenuation.
    pub fn with_alpha_ref(&self, alpha_ref: T) -> Result<Self> {
        Self::new(
            self.eta,
            alpha_ref,
            self.omega_ref,
            self.omega_lo,
            self.omega_hi,
        )
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn alpha_ref(&self) -> T {
        self.alpha_ref
    }

    pub fn omega_ref(&self) -> T {
        self.omega_ref
    }

    pub fn omega_lo(&self) -> T {
        self.omega_lo
    }

    pub fn omega_hi(&self) -> T {
        self.omega_hi
    }

    pub fn band(&self) -> (T, T) {
        (self.omega_lo, self.omega_hi)
    }

    /// α_ref·(ω/ω_ref)^η in Np/m.
    pub fn attenuation(&self, omega: T) -> T {
        self.alpha_ref * (omega / self.omega_ref).powf(self.eta)
    }
}

/// Strictly increasing list of positive angular frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid<T> {
    samples: Vec<T>,
}

impl<T: Real> FrequencyGrid<T> {
    pub fn new(samples: Vec<T>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("samples", "grid is empty"));
        }
        if samples.iter().any(|&w| !(w > T::zero()) || !w.is_finite()) {
            return Err(Error::invalid(
                "samples",
                "grid frequencies must be positive and finite",
            ));
        }
        if samples.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::invalid(
                "samples",
                "grid frequencies must be strictly increasing",
            ));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.samples.iter().copied()
    }
}

/// `n_points` geometrically spaced samples from `omega_lo` to `omega_hi`, both
/// endpoints exact.
pub fn make_log_grid<T: Real>(omega_lo: T, omega_hi: T, n_points: usize) -> Result<FrequencyGrid<T>> {
    check_band(omega_lo, omega_hi)?;
    if n_points < 2 {
        return Err(Error::invalid("n_points", "a grid needs at least 2 points"));
    }
    Ok(FrequencyGrid {
        samples: geometric_points(omega_lo, omega_hi, n_points),
    })
}

/// lo^((n-1-i)/(n-1))·hi^(i/(n-1)) for i = 0..n; n ≥ 2.
pub(crate) fn geometric_points<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let last = T::from_usize(n - 1).unwrap();
    (0..n)
        .map(|i| {
            if i == 0 {
                return lo;
            }
            if i == n - 1 {
                return hi;
            }
            let t = T::from_usize(i).unwrap() / last;
            lo.powf(T::one() - t) * hi.powf(t)
        })
        .collect()
}

/// Generalized compressibility κ(ω) in Pa⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCompressibility<T>(pub Complex<T>);

impl<T: Real> ComplexCompressibility<T> {
    pub fn new(re: T, im: T) -> Self {
        Self(Complex::new(re, im))
    }

    pub fn real(re: T) -> Self {
        Self(Complex::new(re, T::zero()))
    }

    pub fn value(&self) -> Complex<T> {
        self.0
    }

    pub fn re(&self) -> T {
        self.0.re
    }

    pub fn im(&self) -> T {
        self.0.im
    }

    /// Loss tangent |Im κ| / Re κ.
    pub fn loss_ratio(&self) -> T {
        self.0.im.abs() / self.0.re
    }
}

/// dB/cm to Np/m.
pub fn attenuation_db_per_cm_to_np_per_m<T: Real>(a: T) -> T {
    a * lit(100.0) / lit(DB_PER_NEPER)
}

/// Np/m to dB/cm.
pub fn attenuation_np_per_m_to_db_per_cm<T: Real>(a: T) -> T {
    a * lit(DB_PER_NEPER) / lit(100.0)
}

pub fn hz_to_angular<T: Real>(f: T) -> T {
    f * T::TAU()
}

pub fn angular_to_hz<T: Real>(omega: T) -> T {
    omega / T::TAU()
}

fn check_positive<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("{} must be positive and finite", x)))
    }
}

pub(crate) fn check_band<T: Real>(lo: T, hi: T) -> Result<()> {
    check_positive("omega_lo", lo)?;
    check_positive("omega_hi", hi)?;
    if lo >= hi {
        return Err(Error::invalid(
            "band",
            format!("lower edge {:e} is not below upper edge {:e}", to_f64(lo), to_f64(hi)),
        ));
    }
    Ok(())
}
