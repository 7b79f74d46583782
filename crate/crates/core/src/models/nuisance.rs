//! Inference on ψ in `y = ψφ·x + ψφ² + ε` with φ a nuisance parameter.
//!
//! The model is a reparameterized straight line (slope `ψφ`, intercept
//! `ψφ²`), so the unrestricted fit is ordinary least squares and every
//! simple null `(ψ0, φt)` can be checked with an exact F(2, n-2) test. The
//! increase in RSS under `(ψ0, φt)` is a quadratic in ψ0, which makes each
//! per-proxy acceptance set a closed-form interval.

use std::cell::OnceCell;

use serde::Serialize;

use super::midpoint_grid;
use super::ols::{simple_ols, SimpleLine};
use crate::alpha_prime::NullSpec;
use crate::distributions::{chi2_quantile, chi2_sf, f_quantile, f_sf, Probability};
use crate::error::{Error, Result};
use crate::region::{build_region, Region1D};
use crate::testing::{modified_level, SimpleNullTester, TestDecision};

/// Proxy half-width multiplier for confidence regions: `±5/√n`.
pub const REGION_WIDTH: f64 = 5.0;
/// Proxy half-width multiplier for the power study: `±10/√n`.
pub const TEST_WIDTH: f64 = 10.0;
pub const DEFAULT_PROXIES: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimpleRegressionData {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl SimpleRegressionData {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Schema("x and y must have equal lengths".into()));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Schema(
                "regression data contains a non-finite value".into(),
            ));
        }
        Ok(SimpleRegressionData { x, y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// The joint null `{ψ0} × Φ` has `d1 = 2`, `d0 = 1`, no boundary.
pub fn nuisance_spec() -> NullSpec {
    NullSpec::no_boundary(2, 1).expect("valid spec")
}

/// F-tests of `(ψ, φ) = (ψ0, φt)` sharing one OLS fit.
#[derive(Debug, Clone, Copy)]
pub struct NuisanceFTester {
    line: SimpleLine,
}

impl NuisanceFTester {
    pub fn new(data: &SimpleRegressionData) -> Result<Self> {
        let (line, _) = simple_ols(&data.x, &data.y)?;
        Ok(NuisanceFTester { line })
    }

    pub fn line(&self) -> &SimpleLine {
        &self.line
    }

    pub fn n(&self) -> usize {
        self.line.n
    }

    fn den_df(&self) -> u32 {
        (self.line.n - 2) as u32
    }

    /// Unrestricted estimates `(ψ̂, φ̂) = (β̂1²/β̂0, β̂0/β̂1)`.
    pub fn psi_phi_hat(&self) -> Result<(f64, f64)> {
        let (b0, b1) = (self.line.intercept, self.line.slope);
        if b0 == 0.0 || b1 == 0.0 {
            return Err(Error::Degenerate(format!(
                "ψ and φ are not identified when an OLS coefficient is zero (β̂0={b0}, β̂1={b1})"
            )));
        }
        Ok((b1 * b1 / b0, b0 / b1))
    }

    /// `RSS_null(ψ0, φt) - RSS_alt`. With `a = ψ0φt²`, `b = ψ0φt` this is
    /// `n(Δa + Δb·x̄)² + Sxx·Δb²`.
    pub fn rss_increase(&self, psi0: f64, phi_t: f64) -> f64 {
        let l = &self.line;
        let da = psi0 * phi_t * phi_t - l.intercept;
        let db = psi0 * phi_t - l.slope;
        let lead = da + db * l.x_mean;
        l.n as f64 * lead * lead + l.sxx * db * db
    }

    pub fn rss_null(&self, psi0: f64, phi_t: f64) -> f64 {
        self.line.rss + self.rss_increase(psi0, phi_t)
    }

    /// The F statistic of the two restrictions `(ψ, φ) = (ψ0, φt)`.
    pub fn f_stat(&self, psi0: f64, phi_t: f64) -> f64 {
        self.f_from_increase(self.rss_increase(psi0, phi_t))
    }

    fn f_from_increase(&self, increase: f64) -> f64 {
        let rss = self.line.rss;
        if rss > 0.0 {
            (increase / 2.0) / (rss / f64::from(self.den_df()))
        } else if increase > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    pub fn f_stat_p_value(&self, psi0: f64, phi_t: f64) -> Result<Probability> {
        Ok(Probability::saturating(f_sf(
            self.f_stat(psi0, phi_t),
            2,
            self.den_df(),
        )?))
    }

    /// Large-sample LRT statistic with σ² profiled out:
    /// `n·log(RSS_null/RSS_alt)`.
    pub fn lrt_stat(&self, psi0: f64, phi_t: f64) -> f64 {
        let rss = self.line.rss;
        let inc = self.rss_increase(psi0, phi_t);
        if rss > 0.0 {
            self.n() as f64 * (inc / rss).ln_1p()
        } else if inc > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    /// `{ψ0 : F(ψ0, φt) <= f_max}` as a closed interval (possibly empty, or
    /// the whole line when `φt = 0` makes the null model constant).
    pub fn acceptance_interval(&self, phi_t: f64, f_max: f64) -> Region1D {
        let l = &self.line;
        let n = l.n as f64;
        // Allowed RSS increase: F <= f_max  <=>  increase <= budget.
        let budget = if l.rss > 0.0 {
            2.0 * f_max * l.rss / f64::from(self.den_df())
        } else {
            0.0
        };
        // increase(ψ0) = n(ψ0·u - v)² + Sxx(ψ0·φt - β̂1)²  =  Aψ0² - 2Bψ0 + C
        let u = phi_t * phi_t + phi_t * l.x_mean;
        let v = l.intercept + l.slope * l.x_mean;
        let a = n * u * u + l.sxx * phi_t * phi_t;
        let b = n * u * v + l.sxx * phi_t * l.slope;
        let c = n * v * v + l.sxx * l.slope * l.slope - budget;
        if a == 0.0 {
            return if c <= 0.0 {
                Region1D::whole_line()
            } else {
                Region1D::empty()
            };
        }
        let disc = b * b - a * c;
        if disc < 0.0 {
            return Region1D::empty();
        }
        // Stable roots of Aψ² - 2Bψ + C = 0.
        let q = b + b.signum() * disc.sqrt();
        let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
        Region1D::interval(r1.min(r2), r1.max(r2))
    }
}

impl SimpleNullTester<(f64, f64)> for NuisanceFTester {
    fn p_value(&self, point: &(f64, f64)) -> Result<Probability> {
        self.f_stat_p_value(point.0, point.1)
    }
}

pub fn fit_psi_phi(data: &SimpleRegressionData) -> Result<(f64, f64)> {
    NuisanceFTester::new(data)?.psi_phi_hat()
}

pub fn f_stat(data: &SimpleRegressionData, psi0: f64, phi_t: f64) -> Result<f64> {
    Ok(NuisanceFTester::new(data)?.f_stat(psi0, phi_t))
}

pub fn f_stat_p_value(data: &SimpleRegressionData, psi0: f64, phi_t: f64) -> Result<Probability> {
    NuisanceFTester::new(data)?.f_stat_p_value(psi0, phi_t)
}

/// Proxy values of φ: `φ̂` itself followed by `m` cell midpoints over
/// `φ̂ ± width_mult/√n`.
///
/// Keeping `φ̂` in the set guarantees the region contains `ψ̂`, which matters
/// for exact-fit data where every other proxy's interval is empty.
pub fn proxy_points(phi_hat: f64, n: usize, width_mult: f64, m: usize) -> Vec<f64> {
    std::iter::once(phi_hat)
        .chain(midpoint_grid(phi_hat, width_mult / (n as f64).sqrt(), m))
        .collect()
}

fn check_proxy_args(m: usize, width_mult: f64) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptyPoints);
    }
    if !(width_mult > 0.0 && width_mult.is_finite()) {
        return Err(Error::domain(format!(
            "proxy width must be positive, got {width_mult}"
        )));
    }
    Ok(())
}

fn tester_and_proxies(
    data: &SimpleRegressionData,
    m: usize,
    width_mult: f64,
) -> Result<(NuisanceFTester, Vec<f64>)> {
    check_proxy_args(m, width_mult)?;
    let tester = NuisanceFTester::new(data)?;
    let (_, phi_hat) = tester.psi_phi_hat()?;
    let proxies = proxy_points(phi_hat, tester.n(), width_mult, m);
    Ok((tester, proxies))
}

/// Upper `1 - α′` quantile of F(2, n-2); zero when α′ = 1.
fn f_critical(level: Probability, den_df: u32) -> Result<f64> {
    if level.get() >= 1.0 {
        Ok(0.0)
    } else {
        f_quantile(1.0 - level.get(), 2, den_df)
    }
}

/// Confidence region for ψ: the union over proxies φt of
/// `{ψ0 : F(ψ0, φt) <= F_{1-α′, 2, n-2}}`.
pub fn psi_region_f(
    data: &SimpleRegressionData,
    alpha: f64,
    m: usize,
    width_mult: f64,
) -> Result<Region1D> {
    let (tester, proxies) = tester_and_proxies(data, m, width_mult)?;
    psi_region_f_with(&tester, &proxies, alpha)
}

pub fn psi_region_f_with(
    tester: &NuisanceFTester,
    proxies: &[f64],
    alpha: f64,
) -> Result<Region1D> {
    let critical = OnceCell::new();
    build_region(
        |phi_t: &f64, level| {
            let c = match critical.get() {
                Some(c) => *c,
                None => {
                    *critical.get_or_init(|| f_critical(level, tester.den_df()).unwrap_or(f64::NAN))
                }
            };
            if c.is_nan() {
                return Err(Error::domain("failed to compute F critical value"));
            }
            Ok(tester.acceptance_interval(*phi_t, c))
        },
        proxies,
        alpha,
        nuisance_spec(),
    )
}

/// F-scale threshold equivalent to the large-sample LRT region:
/// `(n-2)/2 · (exp(χ²_{1-α,2}/n) - 1)`.
pub fn lrt_region_threshold(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let q = chi2_quantile(1.0 - alpha, 2)?;
    let n = n as f64;
    Ok((n - 2.0) / 2.0 * (q / n).exp_m1())
}

/// Large-sample LRT confidence region for ψ over the same proxies.
pub fn psi_region_lrt(
    data: &SimpleRegressionData,
    alpha: f64,
    m: usize,
    width_mult: f64,
) -> Result<Region1D> {
    let (tester, proxies) = tester_and_proxies(data, m, width_mult)?;
    psi_region_lrt_with(&tester, &proxies, alpha)
}

pub fn psi_region_lrt_with(
    tester: &NuisanceFTester,
    proxies: &[f64],
    alpha: f64,
) -> Result<Region1D> {
    if proxies.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let threshold = lrt_region_threshold(tester.n(), alpha)?;
    Ok(proxies
        .iter()
        .map(|&phi_t| tester.acceptance_interval(phi_t, threshold))
        .collect())
}

/// Pointwise test of `ψ = ψ0`: reject iff every proxy F-test rejects at α′.
pub fn psi_pointwise_test(
    data: &SimpleRegressionData,
    psi0: f64,
    alpha: f64,
    m: usize,
    width_mult: f64,
) -> Result<TestDecision> {
    let (tester, proxies) = tester_and_proxies(data, m, width_mult)?;
    psi_pointwise_test_with(&tester, &proxies, psi0, alpha)
}

pub fn psi_pointwise_test_with(
    tester: &NuisanceFTester,
    proxies: &[f64],
    psi0: f64,
    alpha: f64,
) -> Result<TestDecision> {
    if proxies.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let level = modified_level(alpha, nuisance_spec())?;
    let min_increase = proxies
        .iter()
        .map(|&phi_t| tester.rss_increase(psi0, phi_t))
        .fold(f64::INFINITY, f64::min);
    let f = tester.f_from_increase(min_increase);
    let p = Probability::saturating(f_sf(f, 2, tester.den_df())?);
    Ok(TestDecision::from_max_p(p, level, proxies.len()))
}

/// Large-sample counterpart: reject iff `n·log(RSS_null/RSS_alt)` exceeds
/// `χ²_{1-α,1}` at every proxy. `max_p` is the χ²_1 tail of the smallest
/// statistic.
pub fn psi_lrt_test(
    data: &SimpleRegressionData,
    psi0: f64,
    alpha: f64,
    m: usize,
    width_mult: f64,
) -> Result<TestDecision> {
    let (tester, proxies) = tester_and_proxies(data, m, width_mult)?;
    psi_lrt_test_with(&tester, &proxies, psi0, alpha)
}

pub fn psi_lrt_test_with(
    tester: &NuisanceFTester,
    proxies: &[f64],
    psi0: f64,
    alpha: f64,
) -> Result<TestDecision> {
    if proxies.is_empty() {
        return Err(Error::EmptyPoints);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let critical = chi2_quantile(1.0 - alpha, 1)?;
    let min_stat = proxies
        .iter()
        .map(|&phi_t| tester.lrt_stat(psi0, phi_t))
        .fold(f64::INFINITY, f64::min);
    Ok(TestDecision {
        reject: min_stat > critical,
        max_p: Probability::saturating(chi2_sf(min_stat, 1)?),
        alpha_prime_used: Probability::new(alpha)?,
        n_points: proxies.len(),
    })
}
