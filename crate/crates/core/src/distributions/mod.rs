//! χ², F and Student-t distribution functions, plus seeded normal sampling.
//!
//! CDFs reduce to the regularized incomplete gamma and beta functions in
//! [`special`]. Survival functions are evaluated directly rather than as
//! `1 - cdf` so upper-tail p-values keep their relative precision. Quantiles
//! are found by bracketing and safeguarded false position on whichever tail
//! is smaller.

mod sampling;
pub mod special;

pub use sampling::{mix_seed, mvn_identity_sample, standard_normal_sample, RngStream};
pub use special::{ln_gamma, regularized_beta, regularized_lower_gamma, regularized_upper_gamma};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::domain(format!(
                "probability must lie in [0, 1], got {value}"
            )))
        }
    }

    /// Clamps rounding excursions (e.g. `1 + 1e-17`) back into range.
    /// NaN maps to 1, the conservative p-value.
    pub fn saturating(value: f64) -> Self {
        if value.is_nan() {
            Probability(1.0)
        } else {
            Probability(value.clamp(0.0, 1.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Positive integer degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreesOfFreedom(u32);

impl DegreesOfFreedom {
    pub fn new(df: u32) -> Result<Self> {
        if df == 0 {
            Err(Error::domain("degrees of freedom must be at least 1"))
        } else {
            Ok(DegreesOfFreedom(df))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

fn check_open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "probability must lie in (0, 1), got {p}"
        )))
    }
}

fn check_nonneg(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "argument must be nonnegative, got {x}"
        )))
    }
}

fn check_real(x: f64) -> Result<()> {
    if x.is_nan() {
        Err(Error::domain("argument is NaN"))
    } else {
        Ok(())
    }
}

/// Inverts a pair of (cdf, sf) functions on `[0, ∞)`, solving on the tail
/// that holds the smaller probability.
fn nonneg_quantile<C, S>(p: f64, cdf: C, sf: S, start: f64) -> Result<f64>
where
    C: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    if p <= 0.5 {
        let g = |x: f64| cdf(x) - p;
        let (lo, hi) = roots::bracket_up(g, 0.0, start)?;
        roots::solve_increasing(g, lo, hi)
    } else {
        let q = 1.0 - p;
        let g = |x: f64| q - sf(x);
        let (lo, hi) = roots::bracket_up(g, 0.0, start)?;
        roots::solve_increasing(g, lo, hi)
    }
}

/// CDF of the χ² distribution with `df` degrees of freedom.
pub fn chi2_cdf(x: f64, df: u32) -> Result<f64> {
    let df = DegreesOfFreedom::new(df)?;
    check_nonneg(x)?;
    regularized_lower_gamma(0.5 * df.as_f64(), 0.5 * x)
}

/// Upper tail `P[χ²_df > x]`.
pub fn chi2_sf(x: f64, df: u32) -> Result<f64> {
    let df = DegreesOfFreedom::new(df)?;
    check_nonneg(x)?;
    regularized_upper_gamma(0.5 * df.as_f64(), 0.5 * x)
}

/// The `p` quantile of χ²_df, e.g. `chi2_quantile(0.95, 1) ≈ 3.841459`.
pub fn chi2_quantile(p: f64, df: u32) -> Result<f64> {
    let dof = DegreesOfFreedom::new(df)?;
    check_open_unit(p)?;
    let s = 0.5 * dof.as_f64();
    nonneg_quantile(
        p,
        |x| regularized_lower_gamma(s, 0.5 * x).unwrap_or(f64::NAN),
        |x| regularized_upper_gamma(s, 0.5 * x).unwrap_or(f64::NAN),
        dof.as_f64().max(1.0),
    )
}

fn f_args(d_num: u32, d_den: u32) -> Result<(f64, f64)> {
    let a = DegreesOfFreedom::new(d_num)?.as_f64();
    let b = DegreesOfFreedom::new(d_den)?.as_f64();
    Ok((a, b))
}

fn f_cdf_unchecked(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let ax = a * x;
    regularized_beta(ax / (ax + b), 0.5 * a, 0.5 * b).unwrap_or(f64::NAN)
}

fn f_sf_unchecked(x: f64, a: f64, b: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    regularized_beta(b / (b + a * x), 0.5 * b, 0.5 * a).unwrap_or(f64::NAN)
}

/// CDF of the F distribution with `(d_num, d_den)` degrees of freedom.
pub fn f_cdf(x: f64, d_num: u32, d_den: u32) -> Result<f64> {
    let (a, b) = f_args(d_num, d_den)?;
    check_nonneg(x)?;
    Ok(f_cdf_unchecked(x, a, b))
}

/// Upper tail `P[F_{d_num, d_den} > x]`.
pub fn f_sf(x: f64, d_num: u32, d_den: u32) -> Result<f64> {
    let (a, b) = f_args(d_num, d_den)?;
    check_nonneg(x)?;
    Ok(f_sf_unchecked(x, a, b))
}

pub fn f_quantile(p: f64, d_num: u32, d_den: u32) -> Result<f64> {
    let (a, b) = f_args(d_num, d_den)?;
    check_open_unit(p)?;
    nonneg_quantile(
        p,
        |x| f_cdf_unchecked(x, a, b),
        |x| f_sf_unchecked(x, a, b),
        1.0,
    )
}

/// `P[T_df > |x|]`, the one-sided tail beyond `|x|`.
fn t_tail(x: f64, v: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    if x.is_infinite() {
        return 0.0;
    }
    0.5 * regularized_beta(v / (v + x * x), 0.5 * v, 0.5).unwrap_or(f64::NAN)
}

/// CDF of Student's t with `df` degrees of freedom.
pub fn t_cdf(x: f64, df: u32) -> Result<f64> {
    let v = DegreesOfFreedom::new(df)?.as_f64();
    check_real(x)?;
    let tail = t_tail(x, v);
    Ok(if x > 0.0 { 1.0 - tail } else { tail })
}

/// Upper tail `P[T_df > x]`.
pub fn t_sf(x: f64, df: u32) -> Result<f64> {
    let v = DegreesOfFreedom::new(df)?.as_f64();
    check_real(x)?;
    let tail = t_tail(x, v);
    Ok(if x > 0.0 { tail } else { 1.0 - tail })
}

pub fn t_quantile(p: f64, df: u32) -> Result<f64> {
    let v = DegreesOfFreedom::new(df)?.as_f64();
    check_open_unit(p)?;
    if p == 0.5 {
        return Ok(0.0);
    }
    let tail = p.min(1.0 - p);
    let g = |x: f64| tail - t_tail(x, v);
    let (lo, hi) = roots::bracket_up(g, 0.0, 1.0)?;
    let x = roots::solve_increasing(g, lo, hi)?;
    Ok(if p > 0.5 { x } else { -x })
}
