//! Flat `key = value` experiment files.
//!
//! ```text
//! # Table 1, first cell
//! model = or_null
//! mode = type1
//! truth = 1, 0
//! n = 5
//! m = 10
//! replicates = 10000
//! seed = 7
//! ```
//!
//! `model`, `truth` and `n` are required. Everything else falls back to the
//! defaults of [`ExperimentConfig::new`], with `mode` defaulting to `type1`.
//! `methods` is a comma list; `a` and `b` set the null interval of the
//! `interval` model.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::models::ModelId;
use crate::simulation::{default_methods, ExperimentConfig, Method, Mode};

const KEYS: [&str; 13] = [
    "model",
    "mode",
    "truth",
    "n",
    "replicates",
    "alpha",
    "m",
    "seed",
    "methods",
    "a",
    "b",
    "psi0",
    "width",
];

/// Splits a config file into its key/value pairs. Later duplicates are an
/// error rather than silently winning.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!(
                "line {}: unknown key `{key}`",
                lineno + 1
            )));
        }
        if out
            .insert(key.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::Config(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(out)
}

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::Config(format!("invalid value for `{key}`: `{raw}`")))
}

fn list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>> {
    raw.split(',').map(|s| value(key, s.trim())).collect()
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let pairs = parse_pairs(text)?;
    let get = |key: &str| pairs.get(key).map(String::as_str);
    let require = |key: &str| get(key).ok_or_else(|| Error::Config(format!("missing key `{key}`")));

    let model: ModelId = require("model")?.parse()?;
    let mode: Mode = get("mode").map_or(Ok(Mode::Type1), str::parse)?;
    let truth: Vec<f64> = list("truth", require("truth")?)?;
    let n: usize = value("n", require("n")?)?;
    let mut config = ExperimentConfig::new(model, mode, truth, n);
    config.methods = default_methods(model, mode);

    if let Some(v) = get("replicates") {
        config.replicates = value("replicates", v)?;
    }
    if let Some(v) = get("alpha") {
        config.alpha = value("alpha", v)?;
    }
    if let Some(v) = get("m") {
        config.m = value("m", v)?;
    }
    if let Some(v) = get("seed") {
        config.seed = value("seed", v)?;
    }
    if let Some(v) = get("methods") {
        config.methods = list::<Method>("methods", v)?;
    }
    if let Some(v) = get("a") {
        config.null_interval.0 = value("a", v)?;
    }
    if let Some(v) = get("b") {
        config.null_interval.1 = value("b", v)?;
    }
    if let Some(v) = get("psi0") {
        config.psi0 = value("psi0", v)?;
    }
    if let Some(v) = get("width") {
        config.width = value("width", v)?;
    }
    config.validate()?;
    Ok(config)
}
