//! Scalar root finding, derivative-free maximization and finite differences.

use crate::error::{Error, Result};

/// Default cap on bisection iterations.
pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Relative step used for first-order finite differences of smooth model maps.
pub const FD_RELATIVE_STEP: f64 = 1e-6;

/// Finds a sign change of `f` on `[lo, hi]` by bisection.
///
/// Stops once the bracket is narrower than `tol` or cannot be split further in
/// floating point. Returns the midpoint of the final bracket.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }
    let lo_positive = f_lo > 0.0;
    for _ in 0..max_iter {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is down to adjacent floats
            return Ok(mid);
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::ToleranceNotMet { residual: hi - lo, tol })
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmax, max)`.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iter = 0;
    while b - a > tol && iter < max_iter {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        iter += 1;
    }
    if b - a > tol {
        return Err(Error::ToleranceNotMet { residual: b - a, tol });
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    Ok((x, fx))
}

/// Step size `rel * max(|x|, 1)`.
pub fn step_for(x: f64, rel: f64) -> f64 {
    rel * x.abs().max(1.0)
}

pub fn central_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Three-point second difference.
pub fn second_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok((f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h))
}
