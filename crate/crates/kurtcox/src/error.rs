//! Crate-wide error type.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A series must hold at least one observation.
    #[error("series `{label}` is empty")]
    EmptySeries { label: String },

    /// Series values must be finite; NaN or infinity poisons every
    /// downstream statistic.
    #[error("series `{label}` has a non-finite value at index {index}")]
    NonFiniteValue { label: String, index: usize },

    /// The operation needs more observations than the series holds.
    #[error("need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// Dispersion-based statistics are undefined on a constant series.
    #[error("series has zero variance")]
    ZeroVariance,

    /// Paired operations require equal-length inputs.
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A scalar transform argument was not strictly positive after the shift.
    #[error("argument {value} plus shift {shift} is not positive")]
    NonPositiveArgument { value: f64, shift: f64 },

    /// A series value was not strictly positive after the shift. The caller
    /// must pass a shift strictly greater than `required_shift`.
    #[error(
        "value {value} at index {index} is not positive after shift {shift}; \
         a shift greater than {required_shift} is required for this series"
    )]
    NonPositiveValue {
        index: usize,
        value: f64,
        shift: f64,
        required_shift: f64,
    },

    /// The inverse transform is undefined where `lambda * y + 1 <= 0`.
    #[error("inverse transform undefined for y = {y} at lambda = {lambda}")]
    InverseDomain { y: f64, lambda: f64 },

    /// The power transform left the floating-point range at this lambda.
    #[error("transform result is not finite at lambda = {lambda}")]
    NonFiniteTransform { lambda: f64 },

    /// A lambda-search configuration field violates its bounds.
    #[error("invalid search config: {reason}")]
    InvalidSearchConfig { reason: String },

    /// A generator specification field violates its bounds.
    #[error("invalid spec: {reason}")]
    InvalidSpec { reason: String },

    /// Wraps a failure during grid evaluation with the offending lambda.
    #[error("at lambda {lambda}: {source}")]
    AtLambda {
        lambda: f64,
        #[source]
        source: Box<Error>,
    },

    /// Histograms need a non-degenerate value range.
    #[error("histogram range is degenerate: min == max == {value}")]
    DegenerateRange { value: f64 },

    /// Histograms need at least one bin.
    #[error("histogram needs at least one bin")]
    ZeroBins,

    /// A Gaussian fit was initialized with a non-positive variance.
    #[error("gaussian fit requires sigma2 > 0, got {sigma2}")]
    InvalidFitInit { sigma2: f64 },

    /// The fit residual left the floating-point range.
    #[error("fit residual is not finite")]
    NonFiniteResidual,

    /// Filesystem failure, with the path that triggered it.
    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed CSV input (bad quoting, encoding, ...).
    #[error("csv error in `{path}`: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    /// A mapped column header is absent from the CSV header row.
    #[error("missing column header `{header}` in `{path}`")]
    MissingHeader { header: String, path: PathBuf },

    /// Every row was dropped by validation; nothing left to analyze.
    #[error("no valid rows in `{path}` ({dropped} dropped)")]
    EmptyAfterValidation { path: PathBuf, dropped: usize },
}

impl Error {
    /// Stable machine-readable tag for each variant, used by the CLI's
    /// single-line error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptySeries { .. } => "empty_series",
            Error::NonFiniteValue { .. } => "non_finite_value",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::ZeroVariance => "zero_variance",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NonPositiveArgument { .. } => "non_positive_argument",
            Error::NonPositiveValue { .. } => "non_positive_value",
            Error::InverseDomain { .. } => "inverse_domain",
            Error::NonFiniteTransform { .. } => "non_finite_transform",
            Error::InvalidSearchConfig { .. } => "invalid_search_config",
            Error::InvalidSpec { .. } => "invalid_spec",
            Error::AtLambda { .. } => "at_lambda",
            Error::DegenerateRange { .. } => "degenerate_range",
            Error::ZeroBins => "zero_bins",
            Error::InvalidFitInit { .. } => "invalid_fit_init",
            Error::NonFiniteResidual => "non_finite_residual",
            Error::Io { .. } => "io",
            Error::Csv { .. } => "csv",
            Error::MissingHeader { .. } => "missing_header",
            Error::EmptyAfterValidation { .. } => "empty_after_validation",
        }
    }
}
