//! Fractional Zener constitutive model.
//!
//! κ_Z(ω) = κ₀·(1 + (iωτ_ε)^β)/(1 + (iωτ_σ)^α), with complex powers on the
//! principal branch. For α = β the attenuation shows three power-law regimes:
//! ω^(1+α) for ωτ_σ ≪ 1, ω^(1−α/2) for 1/τ_σ ≪ ω ≪ 1/τ_ε, and ω^(1−α) above.

use num_complex::Complex;

use crate::domain::ComplexCompressibility;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenerParams<T> {
    alpha: T,
    beta: T,
    tau_sigma: T,
    tau_epsilon: T,
    kappa0: T,
}

impl<T: Real> ZenerParams<T> {
    /// Requires 0 < β ≤ α ≤ 1, τ_σ > τ_ε ≥ 0 and κ₀ > 0.
    pub fn new(alpha: T, beta: T, tau_sigma: T, tau_epsilon: T, kappa0: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::invalid("alpha", format!("{} is outside (0, 1]", alpha)));
        }
        if !(beta > T::zero() && beta <= alpha) {
            return Err(Error::invalid("beta", format!("{} is outside (0, alpha]", beta)));
        }
        if !(tau_epsilon >= T::zero() && tau_sigma > tau_epsilon && tau_sigma.is_finite()) {
            return Err(Error::invalid(
                "tau",
                format!(
                    "need tau_sigma > tau_epsilon >= 0, got tau_sigma = {:e}, tau_epsilon = {:e}",
                    tau_sigma, tau_epsilon
                ),
            ));
        }
        if !(kappa0 > T::zero() && kappa0.is_finite()) {
            return Err(Error::invalid("kappa0", "must be positive"));
        }
        Ok(Self {
            alpha,
            beta,
            tau_sigma,
            tau_epsilon,
            kappa0,
        })
    }

    /// The α = β variant used by the relaxation-distribution theory.
    pub fn symmetric(alpha: T, tau_sigma: T, tau_epsilon: T, kappa0: T) -> Result<Self> {
        Self::new(alpha, alpha, tau_sigma, tau_epsilon, kappa0)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn tau_sigma(&self) -> T {
        self.tau_sigma
    }

    pub fn tau_epsilon(&self) -> T {
        self.tau_epsilon
    }

    pub fn kappa0(&self) -> T {
        self.kappa0
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// κ₀(τ_σ^α − τ_ε^α), the common factor of the distribution and its
    /// regime constants.
    pub(crate) fn strength(&self) -> T {
        self.kappa0 * (self.tau_sigma.powf(self.alpha) - self.tau_epsilon.powf(self.alpha))
    }

    /// High-frequency limit κ₀(τ_ε/τ_σ)^α of the α = β model.
    pub fn kappa_infinity(&self) -> T {
        self.kappa0 * (self.tau_epsilon / self.tau_sigma).powf(self.alpha)
    }

    pub fn compressibility(&self, omega: T) -> ComplexCompressibility<T> {
        zener_compressibility(self, omega)
    }
}

/// (iωτ)^γ for ω ≥ 0: (ωτ)^γ·e^{iγπ/2}.
fn i_power<T: Real>(omega_tau: T, gamma: T) -> Complex<T> {
    if omega_tau == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let mag = omega_tau.powf(gamma);
    let phase = gamma * T::FRAC_PI_2();
    Complex::new(mag * phase.cos(), mag * phase.sin())
}

pub fn zener_compressibility<T: Real>(p: &ZenerParams<T>, omega: T) -> ComplexCompressibility<T> {
    let num = Complex::new(T::one(), T::zero()) + i_power(omega * p.tau_epsilon, p.beta);
    let den = Complex::new(T::one(), T::zero()) + i_power(omega * p.tau_sigma, p.alpha);
    ComplexCompressibility(num / den * p.kappa0)
}

/// Attenuation exponents of the three α = β regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeExponents<T> {
    pub low: T,
    pub mid: T,
    pub high: T,
}

/// (1 + α, 1 − α/2, 1 − α).
pub fn zener_regime_exponents<T: Real>(alpha: T) -> Result<RegimeExponents<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::invalid("alpha", format!("{} is outside (0, 1]", alpha)));
    }
    Ok(RegimeExponents {
        low: T::one() + alpha,
        mid: T::one() - alpha / lit(2.0),
        high: T::one() - alpha,
    })
}

/// Which part of the Zener response a power-law target is fitted with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// η > 1: low-frequency regime, 1/τ_σ above the band.
    Low,
    /// η < 1: high-frequency regime, 1/τ_σ below the band.
    High,
    /// η = 1: distribution exponent −1 used directly.
    Unified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeSelection<T> {
    pub regime: Regime,
    /// Fractional order implied by the regime; `None` for [`Regime::Unified`].
    pub alpha: Option<T>,
    /// Power-law exponent d = η − 2 of the relaxation distribution.
    pub distribution_exponent: T,
    /// α = 2(1 − η) if the intermediate regime could also produce η
    /// (η ∈ [1/2, 1)). Reported only.
    pub intermediate_alpha: Option<T>,
}

impl<T: Real> RegimeSelection<T> {
    /// τ_σ placed `margin` times outside the band edge appropriate for the
    /// regime. `None` for the unified case.
    pub fn tau_sigma(&self, omega_lo: T, omega_hi: T, margin: T) -> Option<T> {
        match self.regime {
            Regime::Low => Some(T::one() / (margin * omega_hi)),
            Regime::High => Some(margin / omega_lo),
            Regime::Unified => None,
        }
    }
}

pub fn regime_for_target<T: Real>(eta: T) -> Result<RegimeSelection<T>> {
    if !(eta >= T::zero() && eta <= lit(2.0)) {
        return Err(Error::invalid("eta", format!("{} is outside [0, 2]", eta)));
    }
    let one = T::one();
    let (regime, alpha) = if eta > one {
        (Regime::Low, Some(eta - one))
    } else if eta < one {
        (Regime::High, Some(one - eta))
    } else {
        (Regime::Unified, None)
    };
    let half = lit::<T>(0.5);
    let intermediate_alpha = if eta >= half && eta < one {
        Some(lit::<T>(2.0) * (one - eta))
    } else {
        None
    };
    Ok(RegimeSelection {
        regime,
        alpha,
        distribution_exponent: eta - lit(2.0),
        intermediate_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attenuation_slope(p: &ZenerParams<f64>, lo: f64, hi: f64) -> f64 {
        // Least squares over 41 log-spaced points of -ω·Im√κ.
        let n = 41;
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let w = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp();
                let a = -w * p.compressibility(w).value().sqrt().im;
                (w.ln(), a.ln())
            })
            .collect();
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n as f64;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }

    #[test]
    fn zero_frequency_is_kappa0() {
        let p = ZenerParams::new(0.7, 0.4, 2e-6, 1e-6, 4e-10).unwrap();
        let k = p.compressibility(0.0);
        assert_eq!(k.re(), 4e-10);
        assert_eq!(k.im(), 0.0);
    }

    #[test]
    fn integer_order_example() {
        let p = ZenerParams::new(1.0f64, 1.0, 1.0, 0.5, 1.0).unwrap();
        let k = p.compressibility(1.0);
        assert!((k.re() - 0.75).abs() < 1e-15);
        assert!((k.im() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn high_frequency_limit() {
        // Integer order: correction is (1 − r)/(ωτ_σ) ~ 1e-8.
        let p = ZenerParams::symmetric(1.0, 1.0, 0.5, 2.0).unwrap();
        let k = p.compressibility(1e8);
        assert!((k.value() - Complex::new(p.kappa_infinity(), 0.0)).norm() / p.kappa_infinity() < 1e-6);
        // Fractional order: the remainder decays only as (ωτ_σ)^-α.
        let p = ZenerParams::symmetric(0.5, 1.0, 0.25, 1.0).unwrap();
        let k = p.compressibility(1e8);
        let err = (k.value() - Complex::new(p.kappa_infinity(), 0.0)).norm() / p.kappa_infinity();
        assert!(err < 1e-4 * 1.01, "{err}");
    }

    #[test]
    fn loss_is_nonpositive() {
        for &a in &[0.05, 0.3, 0.5, 0.9, 1.0] {
            let p = ZenerParams::symmetric(a, 1e-6, 3e-7, 4e-10).unwrap();
            for k in -12..12 {
                let w = 10f64.powi(k) / 1e-6;
                assert!(p.compressibility(w).im() <= 0.0);
            }
        }
    }

    #[test]
    fn regime_exponents() {
        let e = zener_regime_exponents(0.5).unwrap();
        assert_eq!((e.low, e.mid, e.high), (1.5, 0.75, 0.5));
        let e = zener_regime_exponents(1.0).unwrap();
        assert_eq!((e.low, e.mid, e.high), (2.0, 0.5, 0.0));
        let e = zener_regime_exponents(0.1f64).unwrap();
        assert!((e.low - 1.1).abs() < 1e-15);
        assert!((e.mid - 0.95).abs() < 1e-15);
        assert!((e.high - 0.9).abs() < 1e-15);
        assert!(zener_regime_exponents(0.0).is_err());
        assert!(zener_regime_exponents(1.2).is_err());
    }

    #[test]
    fn regime_selection() {
        let s = regime_for_target(1.1f64).unwrap();
        assert_eq!(s.regime, Regime::Low);
        assert!((s.alpha.unwrap() - 0.1).abs() < 1e-12);
        let s = regime_for_target(0.5).unwrap();
        assert_eq!(s.regime, Regime::High);
        assert_eq!(s.alpha, Some(0.5));
        assert_eq!(s.intermediate_alpha, Some(1.0));
        let s = regime_for_target(2.0).unwrap();
        assert_eq!(s.regime, Regime::Low);
        assert_eq!(s.alpha, Some(1.0));
        let s = regime_for_target(1.0).unwrap();
        assert_eq!(s.regime, Regime::Unified);
        assert_eq!(s.alpha, None);
        assert_eq!(s.distribution_exponent, -1.0);
        assert!(regime_for_target(2.5).is_err());
        assert!(regime_for_target(-0.5).is_err());
    }

    #[test]
    fn tau_sigma_placement() {
        let low = regime_for_target(1.5).unwrap();
        assert_eq!(low.tau_sigma(1.0, 100.0, 1e3), Some(1e-5));
        let high = regime_for_target(0.5).unwrap();
        assert_eq!(high.tau_sigma(1.0, 100.0, 1e3), Some(1e3));
    }

    #[test]
    fn params_validation() {
        assert!(ZenerParams::new(1.1, 0.5, 1.0, 0.5, 1.0).is_err());
        assert!(ZenerParams::new(0.5, 0.6, 1.0, 0.5, 1.0).is_err());
        assert!(ZenerParams::new(0.5, 0.5, 0.5, 1.0, 1.0).is_err());
        assert!(ZenerParams::new(0.5, 0.5, 1.0, 0.5, 0.0).is_err());
        assert!(ZenerParams::new(0.5, 0.5, 1.0, 0.0, 1.0).is_ok());
    }

    #[test]
    fn regime_slopes_for_moderate_orders() {
        // r = (τ_ε/τ_σ)^α = 1/2 keeps τ_ε within the same decades as τ_σ.
        for &a in &[0.5, 0.9] {
            let p = ZenerParams::symmetric(a, 1.0, 0.5f64.powf(1.0 / a), 1.0).unwrap();
            let e = zener_regime_exponents(a).unwrap();
            assert!((attenuation_slope(&p, 1e-7, 1e-5) - e.low).abs() < 0.02);
            assert!((attenuation_slope(&p, 1e5, 1e7) - e.high).abs() < 0.02);
        }
    }

    #[test]
    fn intermediate_regime_between_time_constants() {
        // Needs 1/τ_σ ≪ ω ≪ 1/τ_ε; take τ_ε/τ_σ = 1e-16 and sample the middle
        // two decades of that span.
        let a = 0.9;
        let p = ZenerParams::symmetric(a, 1.0, 1e-16, 1.0).unwrap();
        let slope = attenuation_slope(&p, 1e7, 1e9);
        assert!((slope - (1.0 - a / 2.0)).abs() < 0.02, "{slope}");
    }

    #[test]
    fn f32_evaluation() {
        let p = ZenerParams::<f32>::new(1.0, 1.0, 1.0, 0.5, 1.0).unwrap();
        let k = p.compressibility(1.0);
        assert!((k.re() - 0.75).abs() < 1e-6);
        assert!((k.im() + 0.25).abs() < 1e-6);
    }
}
