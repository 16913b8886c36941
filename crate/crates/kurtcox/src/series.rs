//! The universal input type: an ordered, finite-valued series of observations.

use crate::error::{Error, Result};

/// An ordered collection of finite real observations with a text label.
///
/// Construction validates that the series is non-empty and that every value
/// is finite, so downstream statistics never see NaN or infinity. Values are
/// immutable once constructed.
#[derive(Debug, Clone)]
pub struct Series {
    label: String,
    values: Vec<f64>,
}

impl Series {
    /// Builds a series, rejecting empty input and non-finite values.
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.is_empty() {
            return Err(Error::EmptySeries { label });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { label, index });
        }
        Ok(Series { label, values })
    }

    /// Returns the same series under a new label.
    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; empty series are rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest observation. Total order is safe: values are finite.
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest observation.
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
