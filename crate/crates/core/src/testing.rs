//! The pointwise-rejection engine.
//!
//! A composite null is rejected when the largest simple-null p-value over
//! the test points is at most α′. Test points are always supplied by the
//! model; the engine never invents them.

use serde::Serialize;

use crate::alpha_prime::{alpha_prime, NullSpec};
use crate::distributions::{chi2_quantile, chi2_sf, Probability};
use crate::error::{Error, Result};

/// A test of the simple null `θ = point` on a fixed dataset.
pub trait SimpleNullTester<P: ?Sized> {
    fn p_value(&self, point: &P) -> Result<Probability>;
}

impl<P: ?Sized, F> SimpleNullTester<P> for F
where
    F: Fn(&P) -> Result<Probability>,
{
    fn p_value(&self, point: &P) -> Result<Probability> {
        self(point)
    }
}

/// Outcome of a composite test.
///
/// `max_p` is the p-value the decision compares against `alpha_prime_used`;
/// for baselines that are not pointwise it is that method's own p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestDecision {
    pub reject: bool,
    pub max_p: Probability,
    pub alpha_prime_used: Probability,
    pub n_points: usize,
}

impl TestDecision {
    /// Rejects iff `max_p <= alpha_prime` (ties reject).
    pub fn from_max_p(max_p: Probability, alpha_prime: Probability, n_points: usize) -> Self {
        TestDecision {
            reject: max_p <= alpha_prime,
            max_p,
            alpha_prime_used: alpha_prime,
            n_points,
        }
    }
}

/// α′ used by the engine. A target level of 1 is the trivial test that
/// always rejects, so it maps to α′ = 1 for every null geometry; anything
/// else goes through [`alpha_prime`].
pub fn modified_level(alpha: f64, spec: NullSpec) -> Result<Probability> {
    if alpha == 1.0 {
        return Ok(Probability::ONE);
    }
    Probability::new(alpha_prime(alpha, spec)?)
}

pub fn max_p_value<P, T>(tester: &T, points: &[P]) -> Result<Probability>
where
    T: SimpleNullTester<P> + ?Sized,
{
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut best = Probability::ZERO;
    for point in points {
        let p = tester.p_value(point)?;
        if p > best {
            best = p;
        }
    }
    Ok(best)
}

/// Composite test by pointwise rejection over `points`.
pub fn pointwise_test<P, T>(
    tester: &T,
    points: &[P],
    spec: NullSpec,
    alpha: f64,
) -> Result<TestDecision>
where
    T: SimpleNullTester<P> + ?Sized,
{
    let level = modified_level(alpha, spec)?;
    let max_p = max_p_value(tester, points)?;
    Ok(TestDecision::from_max_p(max_p, level, points.len()))
}

/// Same decision as [`pointwise_test`], but stops at the first point whose
/// p-value exceeds α′. On early exit `max_p` is that point's p-value (a
/// lower bound on the true maximum) and `n_points` counts the points
/// actually evaluated.
pub fn pointwise_test_early_exit<P, T>(
    tester: &T,
    points: &[P],
    spec: NullSpec,
    alpha: f64,
) -> Result<TestDecision>
where
    T: SimpleNullTester<P> + ?Sized,
{
    let level = modified_level(alpha, spec)?;
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut best = Probability::ZERO;
    for (i, point) in points.iter().enumerate() {
        let p = tester.p_value(point)?;
        if p > level {
            return Ok(TestDecision::from_max_p(p, level, i + 1));
        }
        if p > best {
            best = p;
        }
    }
    Ok(TestDecision::from_max_p(best, level, points.len()))
}

/// Traditional likelihood ratio test for a null without boundary:
/// reject iff `-2 log Λ >= χ²_{1-α, d1-d0}`.
///
/// `max_p` reports the asymptotic p-value `P[χ²_{d1-d0} > -2 log Λ]`.
pub fn lrt_decision_subspace(
    neg2_log_lambda: f64,
    spec: NullSpec,
    alpha: f64,
) -> Result<TestDecision> {
    if spec.has_boundary() {
        return Err(Error::domain(
            "the large-sample LRT needs a null without boundary",
        ));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if !(neg2_log_lambda >= 0.0) {
        return Err(Error::domain(format!(
            "-2 log Λ must be nonnegative, got {neg2_log_lambda}"
        )));
    }
    let critical = chi2_quantile(1.0 - alpha, spec.codim())?;
    let p = Probability::saturating(chi2_sf(neg2_log_lambda, spec.codim())?);
    Ok(TestDecision {
        reject: neg2_log_lambda >= critical,
        max_p: p,
        alpha_prime_used: Probability::new(alpha)?,
        n_points: 1,
    })
}
