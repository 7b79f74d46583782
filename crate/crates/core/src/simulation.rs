//! Seeded Monte Carlo experiments and the fixed suites that reproduce the
//! published tables and figures.
//!
//! Replicate `r` of an experiment draws its data from
//! `RngStream::new(seed, r)`, applies every requested method to that one
//! dataset and reports only boolean outcomes, which are then summed. The
//! result is therefore independent of scheduling and thread count.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{mix_seed, Probability, RngStream};
use crate::error::{Error, Result};
use crate::models::linear_or::{or_null_test, RegressionData};
use crate::models::mvn_ball::{
    ball_pointwise_test, cross_fit_lrt_test, split_lrt_test, MvnSample, Vec5,
};
use crate::models::normal_mean::{bonferroni_interval_test, interval_null_test, UnivariateSample};
use crate::models::nuisance::{
    proxy_points, psi_lrt_test_with, psi_pointwise_test_with, psi_region_f_with,
    psi_region_lrt_with, NuisanceFTester, SimpleRegressionData, DEFAULT_PROXIES, REGION_WIDTH,
    TEST_WIDTH,
};
use crate::models::ModelId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Rejection rate with the truth inside the null.
    Type1,
    /// Rejection rate with the truth outside the null.
    Power,
    /// Rate at which the confidence region contains the true parameter.
    Coverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Pointwise,
    Bonferroni,
    Lrt,
    SplitLrt,
    CrossfitLrt,
}

macro_rules! string_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+ $(,)?) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($variant => $name),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(Error::Config(format!(concat!("unknown ", $what, " `{}`"), s))),
                }
            }
        }
    };
}

string_enum!(Mode, "mode", Mode::Type1 => "type1", Mode::Power => "power", Mode::Coverage => "coverage");
string_enum!(
    Method, "method",
    Method::Pointwise => "pointwise",
    Method::Bonferroni => "bonferroni",
    Method::Lrt => "lrt",
    Method::SplitLrt => "split_lrt",
    Method::CrossfitLrt => "crossfit_lrt",
);

/// Inputs of one Monte Carlo study.
///
/// `truth` holds the data-generating parameters: `[μ]` for `interval`,
/// `[β1, β2]` for `or_null`, `[ψ, φ]` for `nuisance` and the 5-vector θ for
/// `ball`. `m` is the total number of test points for `or_null` (must be
/// even) and the proxy count for `nuisance`; the other models ignore it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelId,
    pub mode: Mode,
    pub truth: Vec<f64>,
    pub n: usize,
    pub replicates: u64,
    pub alpha: f64,
    pub m: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Null interval `[a, b]` for `interval`.
    pub null_interval: (f64, f64),
    /// Hypothesised ψ for nuisance tests.
    pub psi0: f64,
    /// Proxy half-width multiplier for `nuisance` (half-width `width/√n`).
    pub width: f64,
}

impl ExperimentConfig {
    /// A config with the defaults used throughout the reproduction suites.
    pub fn new(model: ModelId, mode: Mode, truth: Vec<f64>, n: usize) -> Self {
        let (m, width) = match (model, mode) {
            (ModelId::OrNull, _) => (10, 0.0),
            (ModelId::Nuisance, Mode::Coverage) => (DEFAULT_PROXIES, REGION_WIDTH),
            (ModelId::Nuisance, _) => (100, TEST_WIDTH),
            _ => (1, 0.0),
        };
        ExperimentConfig {
            model,
            mode,
            truth,
            n,
            replicates: 10_000,
            alpha: 0.05,
            m,
            seed: 0,
            methods: default_methods(model, mode),
            null_interval: (0.0, 1.0),
            psi0: 1.0,
            width,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.replicates == 0 {
            return bad("replicates must be at least 1".into());
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("alpha must lie in (0, 1], got {}", self.alpha));
        }
        let expected = match self.model {
            ModelId::Interval => 1,
            ModelId::OrNull | ModelId::Nuisance => 2,
            ModelId::Ball => 5,
        };
        if self.truth.len() != expected {
            return bad(format!(
                "model {} needs {expected} truth values, got {}",
                self.model,
                self.truth.len()
            ));
        }
        if self.truth.iter().any(|t| !t.is_finite()) {
            return bad("truth values must be finite".into());
        }
        if self.mode == Mode::Coverage && self.model != ModelId::Nuisance {
            return bad(format!(
                "coverage mode is only defined for nuisance, not {}",
                self.model
            ));
        }
        if self.methods.is_empty() {
            return bad("no methods requested".into());
        }
        for &method in &self.methods {
            if !supported_methods(self.model).contains(&method) {
                return bad(format!(
                    "method {method} does not apply to model {}",
                    self.model
                ));
            }
            if method != Method::Pointwise && self.alpha >= 1.0 {
                return bad(format!("method {method} needs alpha < 1"));
            }
        }
        let split = self
            .methods
            .iter()
            .any(|m| matches!(m, Method::SplitLrt | Method::CrossfitLrt));
        let min_n = match self.model {
            ModelId::Interval => 2,
            ModelId::OrNull => 4,
            ModelId::Nuisance => 3,
            ModelId::Ball if split => 2,
            ModelId::Ball => 1,
        };
        if self.n < min_n {
            return bad(format!(
                "model {} needs n >= {min_n}, got {}",
                self.model, self.n
            ));
        }
        match self.model {
            ModelId::OrNull if self.m < 2 || !self.m.is_multiple_of(2) => {
                bad(format!("or_null needs an even m >= 2, got {}", self.m))
            }
            ModelId::Nuisance if self.m == 0 => bad("nuisance needs m >= 1".into()),
            ModelId::Nuisance if !(self.width > 0.0 && self.width.is_finite()) => {
                bad(format!("width must be positive, got {}", self.width))
            }
            ModelId::Nuisance if !self.psi0.is_finite() => bad("psi0 must be finite".into()),
            ModelId::Interval => {
                let (a, b) = self.null_interval;
                if a.is_nan() || b.is_nan() || a > b {
                    bad(format!("null interval needs a <= b, got [{a}, {b}]"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

pub fn supported_methods(model: ModelId) -> &'static [Method] {
    match model {
        ModelId::Interval => &[Method::Pointwise, Method::Bonferroni],
        ModelId::OrNull => &[Method::Pointwise],
        ModelId::Nuisance => &[Method::Pointwise, Method::Lrt],
        ModelId::Ball => &[Method::Pointwise, Method::SplitLrt, Method::CrossfitLrt],
    }
}

pub fn default_methods(model: ModelId, _mode: Mode) -> Vec<Method> {
    supported_methods(model).to_vec()
}

/// Rate for one method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MethodRate {
    pub method: Method,
    pub rate: Probability,
    pub margin: f64,
    /// Replicates whose decision was positive (rejection, or coverage).
    pub hits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub rates: Vec<MethodRate>,
    /// Replicates that produced a degenerate dataset and were excluded.
    pub flagged_replicates: u64,
    /// Replicates entering every rate's denominator.
    pub used_replicates: u64,
    pub wall_time: f64,
}

/// `1.96·√(p(1-p)/replicates)`.
pub fn margin_of_error(rate: f64, replicates: u64) -> f64 {
    if replicates == 0 {
        return 0.0;
    }
    1.96 * (rate * (1.0 - rate) / replicates as f64).sqrt()
}

enum SimData {
    Interval(UnivariateSample),
    OrNull(RegressionData),
    Nuisance(SimpleRegressionData),
    Ball(MvnSample),
}

fn generate(config: &ExperimentConfig, stream: &mut RngStream) -> Result<SimData> {
    let n = config.n;
    let t = &config.truth;
    Ok(match config.model {
        ModelId::Interval => {
            let values = (0..n).map(|_| t[0] + stream.normal()).collect();
            SimData::Interval(UnivariateSample::new(values)?)
        }
        ModelId::OrNull => {
            let (mut x1, mut x2, mut y) = (
                Vec::with_capacity(n),
                Vec::with_capacity(n),
                Vec::with_capacity(n),
            );
            for _ in 0..n {
                let (a, b) = (stream.normal(), stream.normal());
                x1.push(a);
                x2.push(b);
                y.push(t[0] * a + t[1] * b + stream.normal());
            }
            SimData::OrNull(RegressionData::new(x1, x2, y)?)
        }
        ModelId::Nuisance => {
            let (psi, phi) = (t[0], t[1]);
            let (mut x, mut y) = (Vec::with_capacity(n), Vec::with_capacity(n));
            for _ in 0..n {
                let xi = stream.normal();
                x.push(xi);
                y.push(psi * phi * xi + psi * phi * phi + stream.normal());
            }
            SimData::Nuisance(SimpleRegressionData::new(x, y)?)
        }
        ModelId::Ball => {
            let rows = (0..n)
                .map(|_| -> Vec5 { std::array::from_fn(|k| t[k] + stream.normal()) })
                .collect();
            SimData::Ball(MvnSample::new(rows)?)
        }
    })
}

fn evaluate(config: &ExperimentConfig, data: &SimData, method: Method) -> Result<bool> {
    let alpha = config.alpha;
    match (data, method) {
        (SimData::Interval(s), Method::Pointwise) => {
            let (a, b) = config.null_interval;
            Ok(interval_null_test(s, a, b, alpha)?.reject)
        }
        (SimData::Interval(s), Method::Bonferroni) => {
            let (a, b) = config.null_interval;
            Ok(bonferroni_interval_test(s, a, b, alpha)?.reject)
        }
        (SimData::OrNull(d), Method::Pointwise) => Ok(or_null_test(d, alpha, config.m / 2)?.reject),
        (SimData::Nuisance(d), method) => {
            let tester = NuisanceFTester::new(d)?;
            let (_, phi_hat) = tester.psi_phi_hat()?;
            let proxies = proxy_points(phi_hat, tester.n(), config.width, config.m);
            match (config.mode, method) {
                (Mode::Coverage, Method::Pointwise) => {
                    Ok(psi_region_f_with(&tester, &proxies, alpha)?.contains(config.truth[0]))
                }
                (Mode::Coverage, Method::Lrt) => {
                    Ok(psi_region_lrt_with(&tester, &proxies, alpha)?.contains(config.truth[0]))
                }
                (_, Method::Pointwise) => {
                    Ok(psi_pointwise_test_with(&tester, &proxies, config.psi0, alpha)?.reject)
                }
                (_, Method::Lrt) => {
                    Ok(psi_lrt_test_with(&tester, &proxies, config.psi0, alpha)?.reject)
                }
                _ => Err(Error::Config(format!(
                    "method {method} does not apply to model nuisance"
                ))),
            }
        }
        (SimData::Ball(d), Method::Pointwise) => Ok(ball_pointwise_test(d, alpha)?.reject),
        (SimData::Ball(d), Method::SplitLrt) => Ok(split_lrt_test(d, alpha)?.reject),
        (SimData::Ball(d), Method::CrossfitLrt) => Ok(cross_fit_lrt_test(d, alpha)?.reject),
        (_, method) => Err(Error::Config(format!(
            "method {method} does not apply to model {}",
            config.model
        ))),
    }
}

fn is_degenerate(err: &Error) -> bool {
    matches!(err, Error::Degenerate(_) | Error::RankDeficient)
}

/// Outcome counts; `None` marks a flagged replicate.
#[derive(Debug, Clone, PartialEq)]
struct Tally {
    hits: Vec<u64>,
    flagged: u64,
}

impl Tally {
    fn zero(k: usize) -> Self {
        Tally {
            hits: vec![0; k],
            flagged: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.hits.iter_mut().zip(other.hits) {
            *a += b;
        }
        self.flagged += other.flagged;
        self
    }
}

fn run_replicate(config: &ExperimentConfig, replicate: u64) -> Result<Tally> {
    let mut stream = RngStream::new(config.seed, replicate);
    let mut tally = Tally::zero(config.methods.len());
    let outcome = generate(config, &mut stream).and_then(|data| {
        config
            .methods
            .iter()
            .map(|&m| evaluate(config, &data, m))
            .collect::<Result<Vec<bool>>>()
    });
    match outcome {
        Ok(hits) => {
            for (t, h) in tally.hits.iter_mut().zip(hits) {
                *t = u64::from(h);
            }
        }
        Err(e) if is_degenerate(&e) => tally.flagged = 1,
        Err(e) => return Err(e),
    }
    Ok(tally)
}

/// Runs every replicate of `config` on the current rayon pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let start = Instant::now();
    let k = config.methods.len();
    let tally = (0..config.replicates)
        .into_par_iter()
        .map(|r| run_replicate(config, r))
        .try_reduce(|| Tally::zero(k), |a, b| Ok(a.merge(b)))?;
    let used = config.replicates - tally.flagged;
    let rates = config
        .methods
        .iter()
        .zip(&tally.hits)
        .map(|(&method, &hits)| {
            let rate = if used == 0 {
                0.0
            } else {
                hits as f64 / used as f64
            };
            MethodRate {
                method,
                rate: Probability::saturating(rate),
                margin: margin_of_error(rate, used),
                hits,
            }
        })
        .collect();
    Ok(ExperimentResult {
        rates,
        flagged_replicates: tally.flagged,
        used_replicates: used,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// One output row: a (setting, method) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteRow {
    pub suite: String,
    pub model: ModelId,
    /// Truth parameters joined with `;`.
    pub truth: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub rate: f64,
    pub margin: f64,
    pub replicates: u64,
    /// Seed of this setting's experiment; rerunning `run_experiment` with it
    /// reproduces the row.
    pub seed: u64,
}

pub fn format_truth(truth: &[f64]) -> String {
    truth
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn result_rows(
    suite: &str,
    config: &ExperimentConfig,
    result: &ExperimentResult,
) -> Vec<SuiteRow> {
    result
        .rates
        .iter()
        .map(|r| SuiteRow {
            suite: suite.to_string(),
            model: config.model,
            truth: format_truth(&config.truth),
            n: config.n,
            m: config.m,
            method: r.method,
            rate: r.rate.get(),
            margin: r.margin,
            replicates: result.used_replicates,
            seed: config.seed,
        })
        .collect()
}

/// Identifiers of the built-in suites.
pub const SUITES: [&str; 8] = [
    "table1", "table2", "fig1", "fig2", "fig3", "fig4", "fig5", "or_power",
];

fn scaled(replicates: u64, scale: f64) -> u64 {
    ((replicates as f64 * scale).ceil() as u64).max(1)
}

/// The settings of a suite at full scale, in output order.
pub fn suite_settings(suite: &str) -> Result<Vec<ExperimentConfig>> {
    let mut out = Vec::new();
    match suite {
        "table1" => {
            for m in [10, 100] {
                for n in [5, 10, 20, 50, 100] {
                    let mut c =
                        ExperimentConfig::new(ModelId::OrNull, Mode::Type1, vec![1.0, 0.0], n);
                    c.m = m;
                    out.push(c);
                }
            }
        }
        "table2" => {
            for n in [5, 10, 30, 100, 1000] {
                let mut c = ExperimentConfig::new(
                    ModelId::Ball,
                    Mode::Type1,
                    vec![1.0, 0.0, 0.0, 0.0, 0.0],
                    n,
                );
                c.replicates = 40_000;
                out.push(c);
            }
        }
        "fig1" => {
            for i in 0..=40 {
                let mu = (i as f64 - 10.0) / 20.0;
                let mode = if (0.0..=1.0).contains(&mu) {
                    Mode::Type1
                } else {
                    Mode::Power
                };
                out.push(ExperimentConfig::new(ModelId::Interval, mode, vec![mu], 20));
            }
        }
        "fig2" => {
            for n in [5, 10, 20, 50, 200] {
                for mu in [0.0, 1.0] {
                    out.push(ExperimentConfig::new(
                        ModelId::Interval,
                        Mode::Type1,
                        vec![mu],
                        n,
                    ));
                }
            }
        }
        "fig3" => {
            for n in [5, 15, 30, 50, 100, 200] {
                out.push(ExperimentConfig::new(
                    ModelId::Nuisance,
                    Mode::Coverage,
                    vec![1.0, 2.0],
                    n,
                ));
            }
        }
        "fig4" => {
            for psi in [0.5, 1.0, 1.5] {
                for phi in [1.0, 1.5, 2.0, 2.5, 3.0] {
                    for n in [5, 10] {
                        let mode = if psi == 1.0 { Mode::Type1 } else { Mode::Power };
                        out.push(ExperimentConfig::new(
                            ModelId::Nuisance,
                            mode,
                            vec![psi, phi],
                            n,
                        ));
                    }
                }
            }
        }
        "fig5" => {
            for mu in [1.05, 1.2, 1.5] {
                for n in [5, 10, 30, 100, 200, 1000] {
                    out.push(ExperimentConfig::new(
                        ModelId::Ball,
                        Mode::Power,
                        vec![mu, 0.0, 0.0, 0.0, 0.0],
                        n,
                    ));
                }
            }
        }
        "or_power" => {
            for truth in [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]] {
                for n in [5, 10, 20, 50, 100] {
                    let mode = if truth == [1.0, 1.0] {
                        Mode::Power
                    } else {
                        Mode::Type1
                    };
                    out.push(ExperimentConfig::new(
                        ModelId::OrNull,
                        mode,
                        truth.to_vec(),
                        n,
                    ));
                }
            }
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(out)
}

/// Runs a suite. Setting `i` uses seed `mix(master_seed, i)`; `scale`
/// multiplies every replicate count (rounded up, at least 1).
pub fn run_suite(suite: &str, master_seed: u64, scale: f64) -> Result<Vec<SuiteRow>> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Config(format!(
            "scale must be positive and finite, got {scale}"
        )));
    }
    let mut rows = Vec::new();
    for (i, mut config) in suite_settings(suite)?.into_iter().enumerate() {
        config.replicates = scaled(config.replicates, scale);
        config.seed = mix_seed(master_seed, i as u64);
        let result = run_experiment(&config)?;
        rows.extend(result_rows(suite, &config, &result));
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SuiteRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if rows.is_empty() {
        w.write_record(SUITE_COLUMNS)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[SuiteRow], mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, rows)?;
    writeln!(writer)?;
    Ok(())
}

pub const SUITE_COLUMNS: [&str; 10] = [
    "suite",
    "model",
    "truth",
    "n",
    "m",
    "method",
    "rate",
    "margin",
    "replicates",
    "seed",
];
