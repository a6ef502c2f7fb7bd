//! Continuous relaxation distributions and their compressibility.
//!
//! A distribution κ_ν(Ω) of relaxation processes gives
//!
//! κ_N(ω) = κ₀ − ω²∫κ_ν/(Ω²+ω²)dΩ − iω∫Ωκ_ν/(Ω²+ω²)dΩ,
//!
//! evaluated here by adaptive quadrature in ln Ω. The Mittag-Leffler related
//! density κ′_ν(Ω) reproduces the α = β fractional Zener compressibility
//! exactly when it populates the whole axis.

use crate::domain::{ComplexCompressibility, FrequencyGrid};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate, QuadratureOptions};
use crate::scalar::{lit, to_f64, Real};
use crate::zener::ZenerParams;

/// Relaxation-frequency support [lo, hi] with 0 ≤ lo < hi ≤ ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Band<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo >= T::zero() && lo.is_finite() && hi > lo) {
            return Err(Error::invalid(
                "band",
                format!("need 0 <= lo < hi, got [{:e}, {:e}]", lo, hi),
            ));
        }
        Ok(Self { lo, hi })
    }

    /// [0, ∞).
    pub fn full() -> Self {
        Self {
            lo: T::zero(),
            hi: T::infinity(),
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo == T::zero() && self.hi.is_infinite()
    }

    /// Both edges positive and finite.
    pub fn is_bounded(&self) -> bool {
        self.lo > T::zero() && self.hi.is_finite()
    }

    pub fn contains(&self, omega: T) -> bool {
        omega >= self.lo && omega <= self.hi
    }

    pub fn ratio(&self) -> T {
        self.hi / self.lo
    }

    pub fn geometric_mid(&self) -> T {
        (self.lo * self.hi).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind<T> {
    /// κ′_ν(Ω) of a symmetric fractional Zener model.
    ZenerExact(ZenerParams<T>),
    /// C·Ω^d.
    PowerLaw { amplitude: T, exponent: T },
}

/// A relaxation density restricted to a band, together with the
/// zero-frequency compressibility it perturbs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousDistribution<T> {
    kind: DistributionKind<T>,
    band: Band<T>,
    kappa0: T,
}

impl<T: Real> ContinuousDistribution<T> {
    /// κ′_ν(Ω) of `params` on `band`; requires α = β and 0 < α < 1.
    pub fn zener(params: ZenerParams<T>, band: Band<T>) -> Result<Self> {
        check_distribution_params(&params)?;
        Ok(Self {
            kind: DistributionKind::ZenerExact(params),
            band,
            kappa0: params.kappa0(),
        })
    }

    /// C·Ω^d on a bounded band; requires C > 0 and −2 < d ≤ 0.
    pub fn power_law(amplitude: T, exponent: T, band: Band<T>, kappa0: T) -> Result<Self> {
        if !(amplitude > T::zero() && amplitude.is_finite()) {
            return Err(Error::invalid("amplitude", "must be positive"));
        }
        if !(exponent > lit(-2.0) && exponent <= T::zero()) {
            return Err(Error::invalid(
                "exponent",
                format!("{} is outside (-2, 0]", exponent),
            ));
        }
        if !band.is_bounded() {
            return Err(Error::invalid(
                "band",
                "power-law distributions need a positive, finite band",
            ));
        }
        if !(kappa0 > T::zero()) {
            return Err(Error::invalid("kappa0", "must be positive"));
        }
        Ok(Self {
            kind: DistributionKind::PowerLaw {
                amplitude,
                exponent,
            },
            band,
            kappa0,
        })
    }

    pub fn kind(&self) -> &DistributionKind<T> {
        &self.kind
    }

    pub fn band(&self) -> Band<T> {
        self.band
    }

    pub fn kappa0(&self) -> T {
        self.kappa0
    }

    /// Same density on a different band.
    pub fn with_band(&self, band: Band<T>) -> Result<Self> {
        match self.kind {
            DistributionKind::ZenerExact(p) => Self::zener(p, band),
            DistributionKind::PowerLaw {
                amplitude,
                exponent,
            } => Self::power_law(amplitude, exponent, band, self.kappa0),
        }
    }

    /// κ_ν(Ω); zero outside the band.
    pub fn density(&self, omega: T) -> T {
        if !(omega > T::zero()) || !self.band.contains(omega) {
            return T::zero();
        }
        self.density_unbounded(omega)
    }

    fn density_unbounded(&self, omega: T) -> T {
        match self.kind {
            DistributionKind::ZenerExact(ref p) => zener_density(p, omega),
            DistributionKind::PowerLaw {
                amplitude,
                exponent,
            } => amplitude * omega.powf(exponent),
        }
    }

    /// Characteristic frequency worth splitting the quadrature at.
    fn corner(&self) -> Option<T> {
        match self.kind {
            DistributionKind::ZenerExact(ref p) => Some(T::one() / p.tau_sigma()),
            DistributionKind::PowerLaw { .. } => None,
        }
    }

    pub fn compressibility(&self, omega: T, tol: T) -> Result<ComplexCompressibility<T>> {
        continuum_compressibility(self, omega, tol)
    }
}

fn check_distribution_params<T: Real>(p: &ZenerParams<T>) -> Result<()> {
    if !p.is_symmetric() {
        return Err(Error::invalid(
            "beta",
            "the relaxation distribution exists only for alpha = beta",
        ));
    }
    if p.alpha() >= T::one() {
        return Err(Error::DegenerateDistribution(
            "alpha = 1 makes sin(alpha*pi) vanish; the distribution is identically zero".into(),
        ));
    }
    Ok(())
}

fn zener_density<T: Real>(p: &ZenerParams<T>, omega: T) -> T {
    let a = p.alpha();
    let x = (p.tau_sigma() * omega).powf(a);
    let den = x * x + lit::<T>(2.0) * x * (a * T::PI()).cos() + T::one();
    p.strength() * omega.powf(a - T::one()) * (a * T::PI()).sin() / (T::PI() * den)
}

/// κ′_ν(Ω) = κ₀(τ_σ^α − τ_ε^α)Ω^(α−1)sin(απ) / (π((τ_σΩ)^(2α) + 2(τ_σΩ)^α cos(απ) + 1)).
pub fn kappa_prime<T: Real>(p: &ZenerParams<T>, omega: T) -> Result<T> {
    check_distribution_params(p)?;
    if !(omega > T::zero()) {
        return Err(Error::invalid(
            "Omega",
            "the distribution diverges at zero relaxation frequency",
        ));
    }
    Ok(zener_density(p, omega))
}

/// Amplitudes of the three power-law regimes of κ′_ν: C_L·Ω^(α−1) for
/// Ωτ_σ ≪ 1, C_I·Ω^(−1) near Ωτ_σ = 1 and C_H·Ω^(−α−1) for Ωτ_σ ≫ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeConstants<T> {
    pub c_low: T,
    pub c_mid: T,
    pub c_high: T,
}

pub fn regime_constants<T: Real>(p: &ZenerParams<T>) -> Result<RegimeConstants<T>> {
    let a = p.alpha();
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::DegenerateDistribution(format!(
            "regime constants need 0 < alpha < 1, got {}",
            a
        )));
    }
    let base = p.strength() * (a * T::PI()).sin() / T::PI();
    let ts_a = p.tau_sigma().powf(a);
    Ok(RegimeConstants {
        c_low: base,
        c_mid: base / (lit::<T>(2.0) * ts_a * (T::one() + (a * T::PI()).cos())),
        c_high: base / (ts_a * ts_a),
    })
}

/// [ω²κ/(Ω²+ω²), ωΩκ/(Ω²+ω²)] integrated in x = ln Ω.
fn integrands<T: Real>(dist: &ContinuousDistribution<T>, omega: T) -> impl Fn(T) -> [T; 2] + '_ {
    move |x: T| {
        let big = x.exp();
        let k = dist.density_unbounded(big) * big;
        let u = big / omega;
        let den = T::one() + u * u;
        [k / den, k * u / den]
    }
}

/// Adaptive integration over [a, b] with breakpoints at ln ω, the corner
/// frequency and every decade.
fn integrate_span<T: Real>(
    dist: &ContinuousDistribution<T>,
    omega: T,
    a: T,
    b: T,
    tol: T,
) -> Result<Estimate<T, 2>> {
    let (xa, xb) = (a.ln(), b.ln());
    let mut breaks = vec![xa, xb, omega.ln()];
    if let Some(c) = dist.corner() {
        breaks.push(c.ln());
    }
    let decade = T::LN_10();
    let steps = ((xb - xa) / decade).ceil().to_usize().unwrap_or(1).min(400);
    for i in 1..steps {
        breaks.push(xa + decade * T::from_usize(i).unwrap());
    }
    breaks.retain(|&x| x >= xa && x <= xb);
    breaks.sort_by(|p, q| p.partial_cmp(q).unwrap());
    breaks.dedup();
    integrate(integrands(dist, omega), &breaks, &QuadratureOptions::relative(tol))
}

/// κ_N(ω) of a continuous distribution; `tol` is the relative tolerance on
/// both integrals.
pub fn continuum_compressibility<T: Real>(
    dist: &ContinuousDistribution<T>,
    omega: T,
    tol: T,
) -> Result<ComplexCompressibility<T>> {
    if !(omega >= T::zero()) {
        return Err(Error::invalid("omega", "must be non-negative"));
    }
    if !(tol > T::zero()) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    if omega == T::zero() {
        return Ok(ComplexCompressibility::real(dist.kappa0));
    }
    let [re, im] = loss_integrals(dist, omega, tol)?;
    Ok(ComplexCompressibility::new(dist.kappa0 - re, -im))
}

/// (∫κ_ν ω²/(Ω²+ω²) dΩ, ∫κ_ν ωΩ/(Ω²+ω²) dΩ) over the band, each to relative
/// accuracy `tol`; κ_N = κ₀ − I₀ − i·I₁.
pub fn relaxation_integrals<T: Real>(dist: &ContinuousDistribution<T>, omega: T, tol: T) -> Result<[T; 2]> {
    if !(omega > T::zero()) {
        return Err(Error::invalid("omega", "must be positive"));
    }
    if !(tol > T::zero()) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    loss_integrals(dist, omega, tol)
}

fn loss_integrals<T: Real>(dist: &ContinuousDistribution<T>, omega: T, tol: T) -> Result<[T; 2]> {
    let band = dist.band;
    if band.is_bounded() {
        return Ok(integrate_span(dist, omega, band.lo, band.hi, tol)?.value);
    }
    let p = match dist.kind {
        DistributionKind::ZenerExact(p) => p,
        DistributionKind::PowerLaw { .. } => unreachable!("power-law bands are bounded"),
    };
    unbounded_loss_integrals(dist, &p, omega, tol)
}

/// Integrals over a band with an infinite edge (or a zero lower edge). The
/// finite window is widened until analytic bounds on the truncated tails,
/// from the regime asymptotes of κ′_ν, fall below a quarter of the tolerance.
fn unbounded_loss_integrals<T: Real>(
    dist: &ContinuousDistribution<T>,
    p: &ZenerParams<T>,
    omega: T,
    tol: T,
) -> Result<[T; 2]> {
    let band = dist.band;
    let lo_open = band.lo == T::zero();
    let hi_open = band.hi.is_infinite();
    let corner = T::one() / p.tau_sigma();
    let step = lit::<T>(1e8);

    let mut a = if lo_open {
        omega.min(corner).min(band.hi) / step
    } else {
        band.lo
    };
    let mut b = if hi_open {
        omega.max(corner).max(band.lo) * step
    } else {
        band.hi
    };
    let quad_tol = tol / lit(2.0);
    let mut est = integrate_span(dist, omega, a, b, quad_tol)?;
    let mut value = est.value;
    let mut error = est.error;

    let c = regime_constants(p)?;
    let alpha = p.alpha();
    let two = lit::<T>(2.0);
    let quarter = lit::<T>(0.25);
    let four = lit::<T>(4.0);

    for _ in 0..64 {
        // Bounds valid once (τ_σΩ)^α ≤ 1/4 below and ≥ 4 above, where the
        // denominator of κ′_ν stays within a factor 2 of its asymptote.
        let lo_tail = if !lo_open {
            [T::zero(), T::zero()]
        } else if (a * p.tau_sigma()).powf(alpha) <= quarter {
            [
                two * c.c_low * a.powf(alpha) / alpha,
                two * c.c_low * a.powf(alpha + T::one()) / ((alpha + T::one()) * omega),
            ]
        } else {
            [T::infinity(), T::infinity()]
        };
        let hi_tail = if !hi_open {
            [T::zero(), T::zero()]
        } else if (b * p.tau_sigma()).powf(alpha) >= four {
            [
                two * c.c_high * omega * omega * b.powf(-alpha - two) / (alpha + two),
                two * c.c_high * omega * b.powf(-alpha - T::one()) / (alpha + T::one()),
            ]
        } else {
            [T::infinity(), T::infinity()]
        };
        let budget = |k: usize| quarter * tol * value[k].abs();
        let lo_ok = (0..2).all(|k| lo_tail[k] <= budget(k));
        let hi_ok = (0..2).all(|k| hi_tail[k] <= budget(k));
        if lo_ok && hi_ok {
            let total: [T; 2] = std::array::from_fn(|k| error[k] + lo_tail[k] + hi_tail[k]);
            if (0..2).all(|k| total[k] <= tol * value[k].abs()) {
                return Ok(value);
            }
            return Err(Error::QuadratureNotConverged {
                estimate: to_f64(total[0].max(total[1])),
                requested: to_f64(tol * value[0].abs().min(value[1].abs())),
                panels: est.panels,
            });
        }
        if !lo_ok {
            let next = a / step;
            if !(next > T::min_positive_value()) {
                break;
            }
            est = integrate_span(dist, omega, next, a, quad_tol)?;
            for k in 0..2 {
                value[k] = value[k] + est.value[k];
                error[k] = error[k] + est.error[k];
            }
            a = next;
        }
        if !hi_ok {
            let next = b * step;
            if !next.is_finite() || next > T::max_value() / step {
                break;
            }
            est = integrate_span(dist, omega, b, next, quad_tol)?;
            for k in 0..2 {
                value[k] = value[k] + est.value[k];
                error[k] = error[k] + est.error[k];
            }
            b = next;
        }
    }
    Err(Error::QuadratureNotConverged {
        estimate: f64::INFINITY,
        requested: to_f64(tol),
        panels: est.panels,
    })
}

/// |κ_band(ω) − κ_full(ω)| / |κ_full(ω)| for κ′_ν of `p` restricted to `band`
/// against the fully populated axis.
pub fn bandlimited_equivalence_gap<T: Real>(
    p: &ZenerParams<T>,
    band: Band<T>,
    omega: T,
    tol: T,
) -> Result<T> {
    let full = ContinuousDistribution::zener(*p, Band::full())?.compressibility(omega, tol)?;
    let limited = ContinuousDistribution::zener(*p, band)?.compressibility(omega, tol)?;
    Ok((limited.value() - full.value()).norm() / full.value().norm())
}

/// Log-log attenuation slopes well outside a band-limited distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSlopes<T> {
    /// Slope over the samples at or below Ω_L/50.
    pub low: Option<T>,
    /// Slope over the samples at or above 50·Ω_H.
    pub high: Option<T>,
}

/// Fits ln α_k against ln ω separately on the grid samples far below and far
/// above the populated band. Every sample must lie in one of the two zones,
/// and a non-empty zone needs at least two samples. ρ₀ only scales α_k, so the
/// slopes are computed from −ω·Im√κ.
pub fn asymptotic_band_attenuation_check<T: Real>(
    dist: &ContinuousDistribution<T>,
    grid: &FrequencyGrid<T>,
    tol: T,
) -> Result<AsymptoticSlopes<T>> {
    let band = dist.band;
    if !band.is_bounded() {
        return Err(Error::invalid(
            "band",
            "out-of-band asymptotics need a bounded band",
        ));
    }
    let margin = lit::<T>(50.0);
    let (lo_edge, hi_edge) = (band.lo / margin, band.hi * margin);
    let mut low = Vec::new();
    let mut high = Vec::new();
    for w in grid.iter() {
        if w <= lo_edge {
            low.push(w);
        } else if w >= hi_edge {
            high.push(w);
        } else {
            return Err(Error::invalid(
                "grid",
                format!(
                    "sample {:e} rad/s lies within a factor 50 of the populated band",
                    to_f64(w)
                ),
            ));
        }
    }
    let slope = |ws: &[T]| -> Result<Option<T>> {
        match ws.len() {
            0 => Ok(None),
            1 => Err(Error::invalid("grid", "a zone needs at least two samples")),
            _ => {
                let mut xs = Vec::with_capacity(ws.len());
                let mut ys = Vec::with_capacity(ws.len());
                for &w in ws {
                    let k = continuum_compressibility(dist, w, tol)?;
                    let a = -w * k.value().sqrt().im;
                    xs.push(w.ln());
                    ys.push(a.ln());
                }
                Ok(Some(crate::analysis::least_squares_slope(&xs, &ys)))
            }
        }
    };
    Ok(AsymptoticSlopes {
        low: slope(&low)?,
        high: slope(&high)?,
    })
}
