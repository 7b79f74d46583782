//! Finite-sample tests of composite null hypotheses by pointwise rejection.
//!
//! A composite null `θ ∈ Θ₀` is rejected when every simple null `θ = θt` at a
//! handful of data-driven test points is rejected at a modified level α′.
//! [`alpha_prime`] computes α′ from the dimensions of the parameter space and
//! the null, [`testing`] applies the rule, [`region`] turns accepted test
//! points into confidence regions, and [`models`] contains the concrete
//! model families. [`simulation`] reproduces the Monte Carlo studies.

// `!(x > 0.0)` is used on purpose so NaN falls into the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha_prime;
pub mod config;
pub mod data;
pub mod distributions;
pub mod error;
pub mod models;
pub mod region;
pub mod roots;
pub mod simulation;
pub mod testing;

pub use alpha_prime::{alpha_prime, NullSpec};
pub use distributions::Probability;
pub use error::{Error, Result};
pub use region::Region1D;
pub use testing::{pointwise_test, SimpleNullTester, TestDecision};
