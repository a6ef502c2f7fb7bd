//! Globally adaptive 7/15-point Gauss–Kronrod quadrature for small vectors
//! of integrands that share one evaluation.
//!
//! The panel with the largest error relative to its component tolerance is
//! bisected until every component satisfies `err ≤ max(rel·|I|, abs)`.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_panels: usize,
}

impl<T: Real> QuadratureOptions<T> {
    pub fn relative(rel_tol: T) -> Self {
        Self {
            rel_tol,
            abs_tol: T::zero(),
            max_panels: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<T, const N: usize> {
    pub value: [T; N],
    pub error: [T; N],
    pub panels: usize,
}

#[derive(Clone, Copy)]
struct Panel<T, const N: usize> {
    a: T,
    b: T,
    value: [T; N],
    error: [T; N],
}

fn kronrod<T: Real, const N: usize, F: Fn(T) -> [T; N]>(f: &F, a: T, b: T) -> Panel<T, N> {
    let centre = (a + b) / lit(2.0);
    let half = (b - a) / lit(2.0);
    let mut k = [T::zero(); N];
    let mut g = [T::zero(); N];
    let fc = f(centre);
    for c in 0..N {
        k[c] = fc[c] * lit(WGK[7]);
        g[c] = fc[c] * lit(WG[3]);
    }
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        for c in 0..N {
            let s = f1[c] + f2[c];
            k[c] = k[c] + s * lit(WGK[j]);
            if j % 2 == 1 {
                g[c] = g[c] + s * lit(WG[j / 2]);
            }
        }
    }
    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    for c in 0..N {
        value[c] = k[c] * half;
        error[c] = ((k[c] - g[c]) * half).abs();
    }
    Panel { a, b, value, error }
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per consecutive pair of breakpoints.
pub fn integrate<T, const N: usize, F>(
    f: F,
    breakpoints: &[T],
    opts: &QuadratureOptions<T>,
) -> Result<Estimate<T, N>>
where
    T: Real,
    F: Fn(T) -> [T; N],
{
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut panels: Vec<Panel<T, N>> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod(&f, w[0], w[1]))
        .collect();

    loop {
        let (value, error) = totals(&panels);
        let tol: [T; N] = std::array::from_fn(|c| (opts.rel_tol * value[c].abs()).max(opts.abs_tol));
        if (0..N).all(|c| error[c] <= tol[c]) {
            return Ok(Estimate {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= opts.max_panels {
            let worst = (0..N)
                .max_by(|&i, &j| {
                    let ri = to_f64(error[i] / tol[i].max(T::min_positive_value()));
                    let rj = to_f64(error[j] / tol[j].max(T::min_positive_value()));
                    ri.total_cmp(&rj)
                })
                .unwrap_or(0);
            return Err(Error::QuadratureNotConverged {
                estimate: to_f64(error[worst]),
                requested: to_f64(tol[worst]),
                panels: panels.len(),
            });
        }
        let score = |p: &Panel<T, N>| -> f64 {
            (0..N)
                .map(|c| to_f64(p.error[c] / tol[c].max(T::min_positive_value())))
                .fold(0.0, f64::max)
        };
        let (idx, _) = panels
            .iter()
            .enumerate()
            .map(|(i, p)| (i, score(p)))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("at least one panel");
        let p = panels.swap_remove(idx);
        let mid = (p.a + p.b) / lit(2.0);
        if !(mid > p.a && mid < p.b) {
            // Interval exhausted at this precision; nothing left to refine.
            let (value, error) = totals(&panels);
            let worst = (0..N).max_by(|&i, &j| to_f64(error[i]).total_cmp(&to_f64(error[j])));
            let w = worst.unwrap_or(0);
            return Err(Error::QuadratureNotConverged {
                estimate: to_f64(error[w] + p.error[w]),
                requested: to_f64((opts.rel_tol * value[w].abs()).max(opts.abs_tol)),
                panels: panels.len() + 1,
            });
        }
        panels.push(kronrod(&f, p.a, mid));
        panels.push(kronrod(&f, mid, p.b));
    }
}

fn totals<T: Real, const N: usize>(panels: &[Panel<T, N>]) -> ([T; N], [T; N]) {
    let mut value = [T::zero(); N];
    let mut error = [T::zero(); N];
    for p in panels {
        for c in 0..N {
            value[c] = value[c] + p.value[c];
            error[c] = error[c] + p.error[c];
        }
    }
    (value, error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact_on_one_panel() {
        // K15 integrates degree ≤ 22 exactly.
        let est = integrate(
            |x: f64| [x.powi(10), 1.0],
            &[0.0, 2.0],
            &QuadratureOptions::relative(1e-12),
        )
        .unwrap();
        assert!((est.value[0] - 2f64.powi(11) / 11.0).abs() < 1e-10);
        assert!((est.value[1] - 2.0).abs() < 1e-14);
        assert_eq!(est.panels, 1);
    }

    #[test]
    fn peaked_integrand_refines() {
        // ∫_{-10}^{10} 1/(1+x²) dx = 2·atan(10).
        let est = integrate(
            |x: f64| [1.0 / (1.0 + 1e4 * x * x)],
            &[-10.0, 10.0],
            &QuadratureOptions::relative(1e-11),
        )
        .unwrap();
        let exact = 2.0 * (1000.0f64).atan() / 100.0;
        assert!(((est.value[0] - exact) / exact).abs() < 1e-10);
        assert!(est.panels > 1);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let opts = QuadratureOptions {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_panels: 3,
        };
        let err = integrate(|x: f64| [x.abs().sqrt()], &[-1.0, 1.0], &opts).unwrap_err();
        match err {
            Error::QuadratureNotConverged {
                estimate,
                requested,
                panels,
            } => {
                assert!(estimate > requested);
                assert_eq!(panels, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn works_in_f32() {
        let est = integrate(|x: f32| [x.exp()], &[0.0, 1.0], &QuadratureOptions::relative(1e-5)).unwrap();
        assert!((est.value[0] - (1f32.exp() - 1.0)).abs() < 1e-5);
    }
}
