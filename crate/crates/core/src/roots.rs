//! Bracketed root finding for monotone functions.

use crate::error::{Error, Result};

const MAX_ITER: usize = 400;

/// Grows `hi` by doubling until `f(hi) >= 0`, starting from a point where
/// `f(lo) < 0`. `f` must be nondecreasing.
pub fn bracket_up<F>(mut f: F, lo: f64, start: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let mut lo = lo;
    let mut hi = start.max(lo + 1.0);
    for _ in 0..MAX_ITER {
        if f(hi) >= 0.0 {
            return Ok((lo, hi));
        }
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::domain("failed to bracket root"))
}

/// Finds the root of a nondecreasing function on `[lo, hi]` with
/// `f(lo) <= 0 <= f(hi)`.
///
/// Illinois-style false position, falling back to bisection whenever a step
/// fails to halve the bracket. Stops when the bracket is within a few ulps.
pub fn solve_increasing<F>(mut f: F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo.is_nan() || fhi.is_nan() {
        return Err(Error::domain("root finder hit NaN"));
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::domain(format!("root not bracketed by [{lo}, {hi}]")));
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }

    let mut side = 0i8;
    let mut force_bisect = false;
    for _ in 0..MAX_ITER {
        let width = hi - lo;
        if width <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) || width <= f64::MIN_POSITIVE {
            break;
        }
        let mut x = if force_bisect {
            0.5 * (lo + hi)
        } else {
            lo - flo * width / (fhi - flo)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::domain("root finder hit NaN"));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
        force_bisect = hi - lo > 0.5 * width;
    }
    // Both ends are within rounding of the root; pick the midpoint.
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let r = solve_increasing(|x| x * x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn handles_flat_tails() {
        // Nearly flat far from the root: false position alone would crawl.
        let f = |x: f64| (x - 3.0).tanh().powi(3);
        let r = solve_increasing(f, -50.0, 60.0).unwrap();
        assert!((r - 3.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(solve_increasing(|x| x - 5.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn bracket_doubles_until_sign_change() {
        let (lo, hi) = bracket_up(|x| x - 100.0, 0.0, 1.0).unwrap();
        assert!(lo < 100.0 && hi >= 100.0);
    }
}
