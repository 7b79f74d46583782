//! Least squares fits with an intercept and one or two predictors.
//!
//! Both fits work on centered cross-products, which keeps the normal
//! equations well conditioned without a general QR.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OlsFit {
    /// Intercept first, then slopes in column order.
    pub coefficients: Vec<f64>,
    pub fitted: Vec<f64>,
    pub rss: f64,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn centered_cross(a: &[f64], abar: f64, b: &[f64], bbar: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - abar) * (y - bbar)).sum()
}

fn finish(y: &[f64], coefficients: Vec<f64>, fitted: Vec<f64>) -> OlsFit {
    let rss = y
        .iter()
        .zip(&fitted)
        .map(|(yi, fi)| (yi - fi).powi(2))
        .sum();
    OlsFit {
        coefficients,
        fitted,
        rss,
    }
}

/// Sufficient statistics of a simple regression `y = b0 + b1 x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleLine {
    pub intercept: f64,
    pub slope: f64,
    pub x_mean: f64,
    /// `Σ (x - x̄)²`
    pub sxx: f64,
    pub rss: f64,
    pub n: usize,
}

pub fn simple_ols(x: &[f64], y: &[f64]) -> Result<(SimpleLine, OlsFit)> {
    if x.len() != y.len() {
        return Err(Error::Schema("x and y lengths differ".into()));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::SampleSize(format!(
            "simple regression needs n >= 3, got {n}"
        )));
    }
    let (xbar, ybar) = (mean(x), mean(y));
    let sxx = centered_cross(x, xbar, x, xbar);
    if !(sxx > 0.0) {
        return Err(Error::RankDeficient);
    }
    let slope = centered_cross(x, xbar, y, ybar) / sxx;
    let intercept = ybar - slope * xbar;
    let fitted: Vec<f64> = x.iter().map(|xi| intercept + slope * xi).collect();
    let fit = finish(y, vec![intercept, slope], fitted);
    let line = SimpleLine {
        intercept,
        slope,
        x_mean: xbar,
        sxx,
        rss: fit.rss,
        n,
    };
    Ok((line, fit))
}

/// Fit of `y = b0 + b1 x1 + b2 x2` with the centered predictor Gram matrix
/// retained for quadratic-form F statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPredictorFit {
    pub fit: OlsFit,
    /// Centered Gram matrix entries `[s11, s12, s22]`.
    pub gram: [f64; 3],
    pub n: usize,
}

impl TwoPredictorFit {
    pub fn slopes(&self) -> (f64, f64) {
        (self.fit.coefficients[1], self.fit.coefficients[2])
    }

    /// `RSS(b) - RSS(b̂)` for slopes `b` with the intercept refit, which is
    /// the quadratic form `(b - b̂)ᵀ S (b - b̂)`.
    pub fn rss_increase(&self, b1: f64, b2: f64) -> f64 {
        let (h1, h2) = self.slopes();
        let (d1, d2) = (b1 - h1, b2 - h2);
        let [s11, s12, s22] = self.gram;
        (s11 * d1 * d1 + 2.0 * s12 * d1 * d2 + s22 * d2 * d2).max(0.0)
    }
}

pub fn ols2(x1: &[f64], x2: &[f64], y: &[f64]) -> Result<TwoPredictorFit> {
    if x1.len() != y.len() || x2.len() != y.len() {
        return Err(Error::Schema("x1, x2 and y lengths differ".into()));
    }
    let n = y.len();
    if n < 4 {
        return Err(Error::SampleSize(format!(
            "two-predictor regression needs n >= 4, got {n}"
        )));
    }
    let (m1, m2, my) = (mean(x1), mean(x2), mean(y));
    let s11 = centered_cross(x1, m1, x1, m1);
    let s12 = centered_cross(x1, m1, x2, m2);
    let s22 = centered_cross(x2, m2, x2, m2);
    let s1y = centered_cross(x1, m1, y, my);
    let s2y = centered_cross(x2, m2, y, my);
    let det = s11 * s22 - s12 * s12;
    if !(det > 1e-12 * s11 * s22) || !(s11 > 0.0) || !(s22 > 0.0) {
        return Err(Error::RankDeficient);
    }
    let b1 = (s22 * s1y - s12 * s2y) / det;
    let b2 = (s11 * s2y - s12 * s1y) / det;
    let b0 = my - b1 * m1 - b2 * m2;
    let fitted = x1
        .iter()
        .zip(x2)
        .map(|(a, b)| b0 + b1 * a + b2 * b)
        .collect();
    Ok(TwoPredictorFit {
        fit: finish(y, vec![b0, b1, b2], fitted),
        gram: [s11, s12, s22],
        n,
    })
}
