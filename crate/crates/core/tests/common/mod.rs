//! Reference evaluations written independently of the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1], roots found by Newton
/// iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Composite fixed-order Gauss–Legendre over the segments between
/// `breaks`, each split into `m` equal panels.
fn composite<F: Fn(f64) -> [f64; 2]>(f: &F, breaks: &[f64], m: usize, rule: &(Vec<f64>, Vec<f64>)) -> [f64; 2] {
    let (xs, ws) = rule;
    let mut acc = [0.0; 2];
    for seg in breaks.windows(2) {
        let h = (seg[1] - seg[0]) / m as f64;
        for j in 0..m {
            let a = seg[0] + j as f64 * h;
            let c = a + h / 2.0;
            for (x, w) in xs.iter().zip(ws) {
                let v = f(c + h / 2.0 * x);
                acc[0] += w * v[0] * h / 2.0;
                acc[1] += w * v[1] * h / 2.0;
            }
        }
    }
    acc
}

/// Doubles the panel count until successive estimates agree to `rel`, then
/// applies one Richardson step for a rule of order 2·16.
pub fn richardson_integral<F: Fn(f64) -> [f64; 2]>(f: F, breaks: &[f64], rel: f64) -> [f64; 2] {
    let rule = gauss_legendre(16);
    let mut m = 1;
    let mut prev = composite(&f, breaks, m, &rule);
    loop {
        m *= 2;
        let cur = composite(&f, breaks, m, &rule);
        let converged = (0..2).all(|c| (cur[c] - prev[c]).abs() <= rel * cur[c].abs());
        if converged || m >= 1 << 14 {
            let k = 2f64.powi(32) - 1.0;
            return [cur[0] + (cur[0] - prev[0]) / k, cur[1] + (cur[1] - prev[1]) / k];
        }
        prev = cur;
    }
}

/// Density of relaxation processes reproducing a symmetric fractional Zener
/// model of order `a`.
pub fn zener_density(a: f64, tau_sigma: f64, tau_epsilon: f64, kappa0: f64, om: f64) -> f64 {
    let x = (tau_sigma * om).powf(a);
    kappa0 * (tau_sigma.powf(a) - tau_epsilon.powf(a)) * om.powf(a - 1.0) * (a * PI).sin()
        / (PI * (x * x + 2.0 * x * (a * PI).cos() + 1.0))
}

/// (∫κ(Ω)ω²/(Ω²+ω²)dΩ, ∫κ(Ω)ωΩ/(Ω²+ω²)dΩ) over [lo, hi], integrated in ln Ω.
pub fn loss_integrals<D: Fn(f64) -> f64>(density: D, lo: f64, hi: f64, omega: f64, extra_breaks: &[f64], rel: f64) -> [f64; 2] {
    let (a, b) = (lo.ln(), hi.ln());
    let mut breaks = vec![a, b];
    let step = 10f64.ln() / 2.0;
    let mut x = a + step;
    while x < b {
        breaks.push(x);
        x += step;
    }
    for &p in std::iter::once(&omega).chain(extra_breaks) {
        let lp = p.ln();
        if lp > a && lp < b {
            breaks.push(lp);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|p, q| (*p - *q).abs() < 1e-9);
    richardson_integral(
        |x| {
            let om = x.exp();
            let v = om / omega;
            let g = density(om) * om / (1.0 + v * v);
            [g, g * v]
        },
        &breaks,
        rel,
    )
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp())
        .collect()
}
