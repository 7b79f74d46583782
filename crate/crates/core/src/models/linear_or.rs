//! `H0: β1 <= 0 or β2 <= 0` in `y = β0 + β1 x1 + β2 x2 + ε`.
//!
//! The null region is the union of two half-planes; away from the corner
//! it is locally a half-space of full dimension, so α′ comes from the
//! `d0 = d1 = 2` boundary formula. Test points sit on the two boundary rays
//! near the OLS estimate and each is checked by the exact F-test of the two
//! slope restrictions with a free intercept.

use serde::Serialize;

use super::ols::{ols2, OlsFit, TwoPredictorFit};
use super::open_interval_points;
use crate::alpha_prime::NullSpec;
use crate::distributions::{f_sf, Probability};
use crate::error::{Error, Result};
use crate::testing::{modified_level, SimpleNullTester, TestDecision};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionData {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub y: Vec<f64>,
}

impl RegressionData {
    pub fn new(x1: Vec<f64>, x2: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x1.len() != y.len() || x2.len() != y.len() {
            return Err(Error::Schema("x1, x2 and y must have equal lengths".into()));
        }
        if x1.iter().chain(&x2).chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Schema(
                "regression data contains a non-finite value".into(),
            ));
        }
        Ok(RegressionData { x1, x2, y })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

pub fn ols3_fit(data: &RegressionData) -> Result<OlsFit> {
    Ok(ols2(&data.x1, &data.x2, &data.y)?.fit)
}

/// `d1 = d0 = 2` with boundary: α′ = 1 - F_{χ²_2}(χ²_{1-2α, 1}).
pub fn or_null_spec() -> NullSpec {
    NullSpec::with_boundary(2, 2).expect("valid spec")
}

/// F-tests of `(β1, β2) = (b1, b2)` on one dataset. The model fit is shared
/// across test points.
#[derive(Debug, Clone)]
pub struct SlopeFTester {
    fit: TwoPredictorFit,
}

impl SlopeFTester {
    pub fn new(data: &RegressionData) -> Result<Self> {
        Ok(SlopeFTester {
            fit: ols2(&data.x1, &data.x2, &data.y)?,
        })
    }

    pub fn fit(&self) -> &TwoPredictorFit {
        &self.fit
    }

    fn den_df(&self) -> u32 {
        (self.fit.n - 3) as u32
    }

    /// `[(RSS_null - RSS_alt)/2] / [RSS_alt/(n-3)]`; infinite when the
    /// alternative fits exactly but the null does not, NaN-free otherwise.
    pub fn f_statistic(&self, b1: f64, b2: f64) -> f64 {
        let increase = self.fit.rss_increase(b1, b2);
        let rss = self.fit.fit.rss;
        if rss > 0.0 {
            (increase / 2.0) / (rss / f64::from(self.den_df()))
        } else if increase > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    fn p_from_f(&self, f: f64) -> Result<Probability> {
        Ok(Probability::saturating(f_sf(f, 2, self.den_df())?))
    }
}

impl SimpleNullTester<(f64, f64)> for SlopeFTester {
    fn p_value(&self, point: &(f64, f64)) -> Result<Probability> {
        self.p_from_f(self.f_statistic(point.0, point.1))
    }
}

pub fn f_point_p_value(data: &RegressionData, b1: f64, b2: f64) -> Result<Probability> {
    SlopeFTester::new(data)?.p_value(&(b1, b2))
}

/// `m_half` points `(b, 0)` with `b` spread over `(0, 2β̂1)` followed by
/// `m_half` points `(0, b)` over `(0, 2β̂2)`.
pub fn or_null_points(b1_hat: f64, b2_hat: f64, m_half: usize) -> Vec<(f64, f64)> {
    open_interval_points(b1_hat, m_half)
        .map(|b| (b, 0.0))
        .chain(open_interval_points(b2_hat, m_half).map(|b| (0.0, b)))
        .collect()
}

/// Pointwise test of `β1 <= 0 or β2 <= 0` with `2·m_half` test points.
///
/// When either OLS slope is already nonpositive the estimate lies in the
/// null and its own p-value is 1, so the test fails to reject (unless
/// α′ = 1).
pub fn or_null_test(data: &RegressionData, alpha: f64, m_half: usize) -> Result<TestDecision> {
    if m_half == 0 {
        return Err(Error::EmptyPoints);
    }
    let tester = SlopeFTester::new(data)?;
    let level = modified_level(alpha, or_null_spec())?;
    let (b1, b2) = tester.fit.slopes();
    if b1 <= 0.0 || b2 <= 0.0 {
        return Ok(TestDecision::from_max_p(Probability::ONE, level, 1));
    }
    let points = or_null_points(b1, b2, m_half);
    // p is decreasing in F, so the largest p-value belongs to the smallest F.
    let min_f = points
        .iter()
        .map(|&(a, b)| tester.f_statistic(a, b))
        .fold(f64::INFINITY, f64::min);
    Ok(TestDecision::from_max_p(
        tester.p_from_f(min_f)?,
        level,
        points.len(),
    ))
}
