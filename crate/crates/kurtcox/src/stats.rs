//! Population-moment statistics and Pearson correlation.
//!
//! Every moment here uses the population divisor `n`, not the
//! bias-corrected `n - 1`, and kurtosis is reported raw (a normal
//! distribution scores 3, not 0). Libraries disagree on both conventions,
//! so the choice is stated once here and holds everywhere in this crate.
//!
//! Central moments are computed in two passes (mean first, then centered
//! powers) with Neumaier-compensated summation; the inputs this crate sees
//! span many orders of magnitude before transformation and a single-pass
//! textbook formula loses digits exactly where the lambda search needs them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;

/// The first four population moments of a series in one bundle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentSummary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

/// Arithmetic mean.
pub fn mean(s: &Series) -> f64 {
    compensated_sum(s.values().iter().copied()) / s.len() as f64
}

/// Population variance `E[(x - mean)^2]` (divisor `n`).
pub fn variance(s: &Series) -> Result<f64> {
    let m = central_moments(s.values())?;
    Ok(m.m2)
}

/// Third standardized moment `E[(x - mean)^3] / Var(x)^{3/2}`.
pub fn skewness(s: &Series) -> Result<f64> {
    let m = central_moments(s.values())?;
    if m.m2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(m.m3 / (m.m2 * m.m2.sqrt()))
}

/// Raw kurtosis `E[(x - mean)^4] / Var(x)^2`; 3 for a normal distribution.
pub fn kurtosis(s: &Series) -> Result<f64> {
    let m = central_moments(s.values())?;
    if m.m2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(m.m4 / (m.m2 * m.m2))
}

/// Pearson correlation coefficient, clamped into `[-1, 1]`.
pub fn pearson(x: &Series, y: &Series) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: x.len(),
        });
    }
    let mean_x = mean(x);
    let mean_y = mean(y);
    let cov = compensated_sum(
        x.values()
            .iter()
            .zip(y.values())
            .map(|(&a, &b)| (a - mean_x) * (b - mean_y)),
    );
    let var_x = compensated_sum(x.values().iter().map(|&a| (a - mean_x).powi(2)));
    let var_y = compensated_sum(y.values().iter().map(|&b| (b - mean_y).powi(2)));
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let r = cov / (var_x.sqrt() * var_y.sqrt());
    Ok(r.clamp(-1.0, 1.0))
}

/// Computes mean, variance, skewness and kurtosis from one pass over the
/// centered values.
pub fn moment_summary(s: &Series) -> Result<MomentSummary> {
    let m = central_moments(s.values())?;
    if m.m2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(MomentSummary {
        n: s.len(),
        mean: m.mean,
        variance: m.m2,
        skewness: m.m3 / (m.m2 * m.m2.sqrt()),
        kurtosis: m.m4 / (m.m2 * m.m2),
    })
}

pub(crate) struct CentralMoments {
    pub mean: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

/// Two-pass central moments with compensated accumulation.
pub(crate) fn central_moments(values: &[f64]) -> Result<CentralMoments> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let nf = n as f64;
    let mean = compensated_sum(values.iter().copied()) / nf;

    let mut s2 = NeumaierSum::new();
    let mut s3 = NeumaierSum::new();
    let mut s4 = NeumaierSum::new();
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        s2.add(d2);
        s3.add(d2 * d);
        s4.add(d2 * d2);
    }
    Ok(CentralMoments {
        mean,
        m2: s2.total() / nf,
        m3: s3.total() / nf,
        m4: s4.total() / nf,
    })
}

pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut acc = NeumaierSum::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

/// Neumaier variant of compensated summation: also recovers low-order bits
/// when the addend dominates the running sum.
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn new() -> Self {
        NeumaierSum {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}
