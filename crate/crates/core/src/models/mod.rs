//! The worked example models: simple-null testers, test-point generators,
//! composite procedures and the baselines they are compared against.

pub mod linear_or;
pub mod mvn_ball;
pub mod normal_mean;
pub mod nuisance;
pub mod ols;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Stable identifiers used by the CLI, config files and CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelId {
    /// Interval null for a normal mean.
    Interval,
    /// `β1 <= 0 or β2 <= 0` in a two-predictor linear model.
    OrNull,
    /// `ψ = ψ0` with nuisance φ in `y = ψφx + ψφ² + ε`.
    Nuisance,
    /// Unit ball inside a 3-d subspace of a 5-d normal mean.
    Ball,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [
        ModelId::Interval,
        ModelId::OrNull,
        ModelId::Nuisance,
        ModelId::Ball,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Interval => "interval",
            ModelId::OrNull => "or_null",
            ModelId::Nuisance => "nuisance",
            ModelId::Ball => "ball",
        }
    }

    /// Column names of the headered CSV each model reads.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            ModelId::Interval => &["y"],
            ModelId::OrNull => &["x1", "x2", "y"],
            ModelId::Nuisance => &["x", "y"],
            ModelId::Ball => &["y1", "y2", "y3", "y4", "y5"],
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown model `{s}`")))
    }
}

/// `m` equally spaced points strictly inside `(0, 2·center)`: the j-th is
/// `2·center·j/(m+1)`.
pub(crate) fn open_interval_points(center: f64, m: usize) -> impl Iterator<Item = f64> {
    let step = 2.0 * center / (m as f64 + 1.0);
    (1..=m).map(move |j| step * j as f64)
}

/// `m` cell midpoints covering `[center - half_width, center + half_width]`.
pub(crate) fn midpoint_grid(center: f64, half_width: f64, m: usize) -> impl Iterator<Item = f64> {
    let cell = 2.0 * half_width / m as f64;
    (1..=m).map(move |j| center - half_width + cell * (j as f64 - 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_ids_roundtrip() {
        for m in ModelId::ALL {
            assert_eq!(m.as_str().parse::<ModelId>().unwrap(), m);
        }
        assert!("normal".parse::<ModelId>().is_err());
    }

    #[test]
    fn open_interval_spacing_excludes_endpoints() {
        let pts: Vec<f64> = open_interval_points(1.5, 5).collect();
        assert_eq!(pts.len(), 5);
        assert!(pts[0] > 0.0 && pts[4] < 3.0);
        assert!((pts[2] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn midpoint_grid_is_symmetric() {
        let pts: Vec<f64> = midpoint_grid(2.0, 1.0, 4).collect();
        assert_eq!(pts, vec![1.25, 1.75, 2.25, 2.75]);
    }
}
