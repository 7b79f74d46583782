//! Modified significance levels for pointwise rejection.
//!
//! A composite null `Θ₀` of dimension `d0` inside a `d1`-dimensional
//! parameter space is rejected when every simple null in `Θ₀` is rejected
//! at the inflated level α′. Which formula applies depends on whether `Θ₀`
//! is cut out by equalities alone (no boundary) or also by one inequality
//! (a manifold with boundary).

use serde::{Deserialize, Serialize};

use crate::distributions::{chi2_cdf, chi2_quantile, chi2_sf};
use crate::error::{Error, Result};
use crate::roots;

/// Geometry of a null region: ambient dimension, null dimension, and
/// whether the region has a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullSpec {
    d1: u32,
    d0: u32,
    has_boundary: bool,
}

impl NullSpec {
    pub fn new(d1: u32, d0: u32, has_boundary: bool) -> Result<Self> {
        if d1 == 0 {
            return Err(Error::domain("parameter dimension d1 must be at least 1"));
        }
        if d0 > d1 {
            return Err(Error::domain(format!(
                "null dimension d0={d0} exceeds d1={d1}"
            )));
        }
        if !has_boundary && d0 == d1 {
            return Err(Error::domain(
                "a full-dimensional null without boundary admits no test",
            ));
        }
        Ok(NullSpec {
            d1,
            d0,
            has_boundary,
        })
    }

    pub fn no_boundary(d1: u32, d0: u32) -> Result<Self> {
        Self::new(d1, d0, false)
    }

    pub fn with_boundary(d1: u32, d0: u32) -> Result<Self> {
        Self::new(d1, d0, true)
    }

    pub fn d1(&self) -> u32 {
        self.d1
    }

    pub fn d0(&self) -> u32 {
        self.d0
    }

    pub fn has_boundary(&self) -> bool {
        self.has_boundary
    }

    /// Codimension `d1 - d0` (the number of equality constraints).
    pub fn codim(&self) -> u32 {
        self.d1 - self.d0
    }
}

fn check_level(alpha: f64, upper: f64) -> Result<()> {
    if alpha > 0.0 && alpha < upper {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must lie in (0, {upper}), got {alpha}"
        )))
    }
}

/// α′ for a null region without boundary:
/// `1 - F_{χ²_{d1}}(χ²_{1-α, d1-d0})`.
pub fn alpha_prime_no_boundary(alpha: f64, spec: NullSpec) -> Result<f64> {
    if spec.has_boundary {
        return Err(Error::domain(
            "spec has a boundary; use alpha_prime_with_boundary",
        ));
    }
    check_level(alpha, 1.0)?;
    let q = chi2_quantile(1.0 - alpha, spec.codim())?;
    chi2_sf(q, spec.d1)
}

/// Left side of the boundary-case equation minus `1 - α`, as a function of
/// the critical value `q = χ²_{1-α′, d1}`. `F_{χ²_0}` is taken to be 1.
fn boundary_equation(q: f64, codim: u32, alpha: f64) -> f64 {
    let lower = if codim == 0 {
        1.0
    } else {
        chi2_cdf(q, codim).unwrap_or(f64::NAN)
    };
    let upper = chi2_cdf(q, codim + 1).unwrap_or(f64::NAN);
    0.5 * (lower + upper) - (1.0 - alpha)
}

/// α′ for a null region with boundary, solving
/// `½[F_{χ²_{d1-d0}}(χ²_{1-α′,d1}) + F_{χ²_{d1-d0+1}}(χ²_{1-α′,d1})] = 1 - α`.
///
/// When `d0 = d1` this has the closed form `1 - F_{χ²_{d1}}(χ²_{1-2α, 1})`,
/// which is used directly. Otherwise the equation is solved for the critical
/// value `q` (the left side is increasing in `q`) and α′ is read off as the
/// χ²_{d1} tail beyond `q`.
pub fn alpha_prime_with_boundary(alpha: f64, spec: NullSpec) -> Result<f64> {
    if !spec.has_boundary {
        return Err(Error::domain(
            "spec has no boundary; use alpha_prime_no_boundary",
        ));
    }
    check_level(alpha, 0.5)?;
    let codim = spec.codim();
    if codim == 0 {
        let q = chi2_quantile(1.0 - 2.0 * alpha, 1)?;
        return chi2_sf(q, spec.d1);
    }
    let g = |q: f64| boundary_equation(q, codim, alpha);
    let (lo, hi) = roots::bracket_up(g, 0.0, f64::from(spec.d1))?;
    let q = roots::solve_increasing(g, lo, hi)?;
    chi2_sf(q, spec.d1)
}

/// Dispatches on `spec.has_boundary()`.
pub fn alpha_prime(alpha: f64, spec: NullSpec) -> Result<f64> {
    if spec.has_boundary {
        alpha_prime_with_boundary(alpha, spec)
    } else {
        alpha_prime_no_boundary(alpha, spec)
    }
}

/// Residual of the boundary-case equation at a candidate α′, recomputing the
/// critical value from α′ itself.
pub fn boundary_residual(alpha: f64, alpha_prime: f64, spec: NullSpec) -> Result<f64> {
    check_level(alpha_prime, 1.0)?;
    let q = chi2_quantile(1.0 - alpha_prime, spec.d1)?;
    Ok(boundary_equation(q, spec.codim(), alpha))
}
