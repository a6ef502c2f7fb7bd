//! Bracketed scalar root finding: secant steps safeguarded by bisection.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions<T> {
    /// Stop once |f(x)| ≤ `f_tol`.
    pub f_tol: T,
    /// Stop once the bracket is narrower than `x_tol`.
    pub x_tol: T,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Root<T> {
    pub x: T,
    pub fx: T,
    pub iterations: usize,
}

/// Finds a root of `f` in `[lo, hi]`, which must bracket a sign change.
pub fn find_root<T, F>(mut f: F, mut lo: T, mut hi: T, opts: &RootOptions<T>) -> Result<Root<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo.abs() <= opts.f_tol {
        return Ok(Root { x: lo, fx: f_lo, iterations: 0 });
    }
    if f_hi.abs() <= opts.f_tol {
        return Ok(Root { x: hi, fx: f_hi, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Calibration(format!(
            "interval [{:e}, {:e}] does not bracket a root",
            lo, hi
        )));
    }
    let half = lit::<T>(0.5);
    let mut bisect_next = false;
    for it in 1..=opts.max_iter {
        let width = hi - lo;
        let secant = lo - f_lo * width / (f_hi - f_lo);
        // Fall back to bisection when the secant leaves the inner 90% of the
        // bracket or the previous step barely shrank it.
        let inner = width * lit(0.05);
        let x = if bisect_next || !(secant > lo + inner && secant < hi - inner) {
            lo + width * half
        } else {
            secant
        };
        let fx = f(x)?;
        if fx.abs() <= opts.f_tol {
            return Ok(Root { x, fx, iterations: it });
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        bisect_next = hi - lo > width * lit(0.5);
        if hi - lo <= opts.x_tol {
            let (x, fx) = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
            return Ok(Root { x, fx, iterations: it });
        }
    }
    Err(Error::Calibration(format!(
        "no convergence within {} iterations (bracket [{:e}, {:e}])",
        opts.max_iter, lo, hi
    )))
}
