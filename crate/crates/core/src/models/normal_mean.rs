//! Interval nulls `μ ∈ [a, b]` for the mean of a normal sample with unknown
//! variance, and the Bonferroni pair of one-sided tests they are compared to.

use serde::Serialize;

use crate::alpha_prime::NullSpec;
use crate::distributions::{t_cdf, t_sf, Probability};
use crate::error::{Error, Result};
use crate::testing::{pointwise_test, SimpleNullTester, TestDecision};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnivariateSample {
    values: Vec<f64>,
    mean: f64,
    sd: f64,
}

impl UnivariateSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::SampleSize(format!(
                "need at least 2 observations, got {n}"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Schema("sample contains a non-finite value".into()));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        let sd = (ss / (n - 1) as f64).sqrt();
        Ok(UnivariateSample { values, mean, sd })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample standard deviation with divisor `n - 1`.
    pub fn sd(&self) -> f64 {
        self.sd
    }

    fn df(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    fn std_error(&self) -> Result<f64> {
        if self.sd > 0.0 {
            Ok(self.sd / (self.values.len() as f64).sqrt())
        } else {
            Err(Error::Degenerate(
                "sample standard deviation is zero".into(),
            ))
        }
    }
}

/// Two-sided one-sample t-test p-value for `μ = mu0`.
pub fn t_p_value(sample: &UnivariateSample, mu0: f64) -> Result<Probability> {
    let se = sample.std_error()?;
    let t = (sample.mean - mu0).abs() / se;
    Ok(Probability::saturating(2.0 * t_sf(t, sample.df())?))
}

impl SimpleNullTester<f64> for UnivariateSample {
    fn p_value(&self, mu0: &f64) -> Result<Probability> {
        t_p_value(self, *mu0)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_nan() || b.is_nan() || a > b {
        Err(Error::domain(format!("need a <= b, got [{a}, {b}]")))
    } else {
        Ok(())
    }
}

/// The null `[a, b]` is a one-dimensional region with boundary, so α′ = 2α.
pub fn interval_spec() -> NullSpec {
    NullSpec::with_boundary(1, 1).expect("valid spec")
}

/// Pointwise test of `μ ∈ [a, b]`.
///
/// The t p-value falls as `|x̄ - μ|` grows, so its maximum over the whole
/// interval is attained at the point of `[a, b]` nearest `x̄`; that single
/// point decides the test over the continuum. The resulting rule rejects
/// iff `x̄ < a - t_{1-α,n-1}·s/√n` or `x̄ > b + t_{1-α,n-1}·s/√n`.
/// Either endpoint may be infinite (`[μ0, ∞)` gives the one-tailed t-test).
pub fn interval_null_test(
    sample: &UnivariateSample,
    a: f64,
    b: f64,
    alpha: f64,
) -> Result<TestDecision> {
    check_interval(a, b)?;
    sample.std_error()?;
    let nearest = sample.mean.clamp(a, b);
    pointwise_test(sample, &[nearest], interval_spec(), alpha)
}

/// Bonferroni combination of the one-sided tests of `μ >= a` and `μ <= b`,
/// each at level α/2. `max_p` is the Bonferroni-adjusted p-value
/// `min(1, 2·min(p_a, p_b))`, compared against α.
pub fn bonferroni_interval_test(
    sample: &UnivariateSample,
    a: f64,
    b: f64,
    alpha: f64,
) -> Result<TestDecision> {
    check_interval(a, b)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let se = sample.std_error()?;
    let p_low = t_cdf((sample.mean - a) / se, sample.df())?;
    let p_high = t_sf((sample.mean - b) / se, sample.df())?;
    Ok(bonferroni_decision(p_low, p_high, alpha))
}

fn bonferroni_decision(p_low: f64, p_high: f64, alpha: f64) -> TestDecision {
    let adjusted = Probability::saturating(2.0 * p_low.min(p_high));
    TestDecision::from_max_p(adjusted, Probability::saturating(alpha), 2)
}
