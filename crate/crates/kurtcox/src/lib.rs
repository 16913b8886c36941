//! Box-Cox normalization of positive-valued data, with the power parameter
//! selected by driving sample kurtosis toward the normal value 3.
//!
//! Heavy-tailed data — firm sizes, incomes, latencies — violate the
//! normality that much of statistics quietly assumes. This crate applies
//! the Box-Cox power transform, picks the parameter lambda whose transform
//! looks most normal by kurtosis (or skewness), quantifies the result with
//! Gaussian fits and Pearson correlations, and emits a machine-readable
//! report plus gnuplot scripts.
//!
//! # Modules
//!
//! - [`series`]: the validated input type.
//! - [`stats`]: population moments and correlation.
//! - [`boxcox`]: the transform and the lambda search.
//! - [`fit`]: histograms and Gaussian fits.
//! - [`synth`]: deterministic log-normal sample generators.
//! - [`ingest`]: CSV loading.
//! - [`report`]: pipeline orchestration and artifact emission.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example moments              # moment statistics
//! cargo run --example transform_roundtrip  # the transform and its inverse
//! cargo run --example lambda_search        # kurtosis curve and lambda selection
//! cargo run --example gaussian_fit         # histograms and density fits
//! cargo run --example synthetic_data       # seeded generators, correlation contrast
//! cargo run --example csv_workflow         # synth -> CSV -> ingest round trip
//! cargo run --example full_pipeline        # end-to-end analysis with artifacts
//! ```
//!
//! The same pipeline is scriptable through the `kurtcox` binary; see the
//! README for the subcommands.

pub mod boxcox;
pub mod error;
pub mod fit;
pub mod ingest;
pub mod report;
pub mod series;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
pub use series::Series;
