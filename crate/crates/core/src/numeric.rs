//! Bracketing root finder and comparison-based minimizer.

use crate::error::{Error, Result};

const MAX_ITER: usize = 400;

/// Bisection for a root of `f` in `[lo, hi]`, which must bracket a sign
/// change. Iterates until the interval reaches `tol`, then keeps halving
/// down to floating-point resolution so the residual is as small as the
/// arithmetic allows.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})"
        )));
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(hi - lo <= tol.max(4.0 * f64::EPSILON * hi.abs()));
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the minimum of a unimodal function on
/// `[lo, hi]`, driven by `diff(a, b) = g(a) − g(b)` instead of separate
/// evaluations. Callers that can evaluate the difference without
/// cancellation get the minimizer to near machine precision rather than the
/// usual `√ε`.
pub fn golden_section_min<D: Fn(f64, f64) -> f64>(diff: D, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    for _ in 0..MAX_ITER {
        if hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
        if diff(x1, x2) < 0.0 {
            hi = x2;
            x2 = x1;
            x1 = hi - inv_phi * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + inv_phi * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_requires_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn golden_quadratic() {
        let g = |x: f64| (x - 0.3) * (x - 0.3);
        let x = golden_section_min(|a, b| g(a) - g(b), -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-7);
        // exact difference form: (a-b)(a+b-0.6)
        let x = golden_section_min(|a, b| (a - b) * (a + b - 0.6), -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-14);
    }
}
