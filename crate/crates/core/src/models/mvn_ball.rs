//! Five-dimensional normal mean with identity covariance and the null
//! `Θ₀ = {θ1²+θ2²+θ3² <= 1, θ4 = θ5 = 0}`: a unit ball inside a
//! three-dimensional subspace, i.e. a region with boundary and `d0 = 3`.
//!
//! The pointwise test uses a single test point, the projection of the sample
//! mean onto `Θ₀`, checked with the exact known-covariance LRT
//! (`n‖Ȳ - θt‖² ~ χ²_5`). The split and cross-fit likelihood-ratio tests are
//! the universal-inference baselines evaluated at the same point.

use serde::Serialize;

use crate::alpha_prime::NullSpec;
use crate::distributions::{chi2_sf, Probability};
use crate::error::{Error, Result};
use crate::testing::{lrt_decision_subspace, pointwise_test, SimpleNullTester, TestDecision};

pub const DIM: usize = 5;
pub type Vec5 = [f64; DIM];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MvnSample {
    rows: Vec<Vec5>,
    mean: Vec5,
}

fn mean_of(rows: &[Vec5]) -> Vec5 {
    let mut m = [0.0; DIM];
    for r in rows {
        for (acc, v) in m.iter_mut().zip(r) {
            *acc += v;
        }
    }
    let n = rows.len() as f64;
    m.map(|v| v / n)
}

fn dist2(a: &Vec5, b: &Vec5) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

impl MvnSample {
    pub fn new(rows: Vec<Vec5>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::SampleSize("need at least one observation".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Schema("sample contains a non-finite value".into()));
        }
        let mean = mean_of(&rows);
        Ok(MvnSample { rows, mean })
    }

    pub fn rows(&self) -> &[Vec5] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn mean(&self) -> &Vec5 {
        &self.mean
    }

    /// First `⌈n/2⌉` rows and the rest, in order.
    pub fn split_halves(&self) -> Result<(&[Vec5], &[Vec5])> {
        let n = self.rows.len();
        if n < 2 {
            return Err(Error::SampleSize(format!(
                "sample splitting needs n >= 2, got {n}"
            )));
        }
        Ok(self.rows.split_at(n.div_ceil(2)))
    }
}

pub fn ball_spec() -> NullSpec {
    NullSpec::with_boundary(5, 3).expect("valid spec")
}

/// Nearest point of `Θ₀` to `v`: drop the last two coordinates and pull the
/// first three radially onto the unit ball if they lie outside it.
pub fn project_to_null(v: &Vec5) -> Vec5 {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let scale = if norm > 1.0 { 1.0 / norm } else { 1.0 };
    [v[0] * scale, v[1] * scale, v[2] * scale, 0.0, 0.0]
}

/// Exact p-value of `θ = θt` with known identity covariance.
pub fn mvn_simple_p_value(data: &MvnSample, theta_t: &Vec5) -> Result<Probability> {
    let stat = data.len() as f64 * dist2(&data.mean, theta_t);
    Ok(Probability::saturating(chi2_sf(stat, DIM as u32)?))
}

impl SimpleNullTester<Vec5> for MvnSample {
    fn p_value(&self, point: &Vec5) -> Result<Probability> {
        mvn_simple_p_value(self, point)
    }
}

pub fn ball_pointwise_test(data: &MvnSample, alpha: f64) -> Result<TestDecision> {
    let point = project_to_null(&data.mean);
    pointwise_test(data, &[point], ball_spec(), alpha)
}

/// `log U = ℓ(θ̂_other; Y_fit) - ℓ(θt; Y_fit)` for the Gaussian likelihood,
/// using `Σ‖y - c‖² = Σ‖y - ȳ‖² + n‖ȳ - c‖²`.
fn held_out_log_ratio(fit_half: &[Vec5], other_mean: &Vec5, theta_t: &Vec5) -> f64 {
    let m = mean_of(fit_half);
    0.5 * fit_half.len() as f64 * (dist2(&m, theta_t) - dist2(&m, other_mean))
}

/// `(log U1, log U2)` at `theta_t`.
pub fn split_log_ratios(data: &MvnSample, theta_t: &Vec5) -> Result<(f64, f64)> {
    let (first, second) = data.split_halves()?;
    let (m1, m2) = (mean_of(first), mean_of(second));
    Ok((
        held_out_log_ratio(first, &m2, theta_t),
        held_out_log_ratio(second, &m1, theta_t),
    ))
}

/// Decision for a universal-inference statistic `U`: reject iff `U > 1/α`.
/// `max_p` is the e-value p-value `min(1, 1/U)`.
fn e_value_decision(log_u: f64, alpha: f64) -> Result<TestDecision> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(TestDecision {
        reject: log_u > -alpha.ln(),
        max_p: Probability::saturating((-log_u.max(0.0)).exp()),
        alpha_prime_used: Probability::new(alpha)?,
        n_points: 1,
    })
}

/// Split LRT at the projection point: reject iff `U1 > 1/α`.
pub fn split_lrt_test(data: &MvnSample, alpha: f64) -> Result<TestDecision> {
    let theta_t = project_to_null(&data.mean);
    let (l1, _) = split_log_ratios(data, &theta_t)?;
    e_value_decision(l1, alpha)
}

/// Cross-fit LRT at the projection point: reject iff `(U1 + U2)/2 > 1/α`.
pub fn cross_fit_lrt_test(data: &MvnSample, alpha: f64) -> Result<TestDecision> {
    let theta_t = project_to_null(&data.mean);
    let (l1, l2) = split_log_ratios(data, &theta_t)?;
    let hi = l1.max(l2);
    let log_avg = hi + ((l1 - hi).exp() + (l2 - hi).exp()).ln() - std::f64::consts::LN_2;
    e_value_decision(log_avg, alpha)
}

/// The subspace `{θ4 = θ5 = 0}` (no boundary, `d0 = 3`).
pub fn subspace_spec() -> NullSpec {
    NullSpec::no_boundary(5, 3).expect("valid spec")
}

pub fn project_to_subspace(v: &Vec5) -> Vec5 {
    [v[0], v[1], v[2], 0.0, 0.0]
}

/// Pointwise test of the subspace null at the projection of Ȳ.
pub fn subspace_pointwise_test(data: &MvnSample, alpha: f64) -> Result<TestDecision> {
    let point = project_to_subspace(&data.mean);
    pointwise_test(data, &[point], subspace_spec(), alpha)
}

/// Traditional LRT of the subspace null: `-2 log Λ = n(Ȳ4² + Ȳ5²)`.
pub fn subspace_lrt_test(data: &MvnSample, alpha: f64) -> Result<TestDecision> {
    let m = &data.mean;
    let stat = data.len() as f64 * (m[3] * m[3] + m[4] * m[4]);
    lrt_decision_subspace(stat, subspace_spec(), alpha)
}
