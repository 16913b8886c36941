//! Deterministic synthetic data generation.
//!
//! The generator family is pinned so golden tests stay stable: normal
//! deviates come from the Box-Muller cosine branch driven by a ChaCha8
//! stream, with every transcendental evaluated through `libm`. Identical
//! specs therefore produce bit-identical output on every platform.
//!
//! State transition per deviate: exactly two `next_u64` calls on
//! `ChaCha8Rng::seed_from_u64(seed)` — the first mapped to `u1` in `(0, 1]`,
//! the second to `u2` in `[0, 1)` — combined as
//! `sqrt(-2 ln u1) * cos(2 pi u2)`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;

/// Synthetic firm-size demo defaults: the "employees" column.
pub const DEFAULT_EMPLOYEES_MU: f64 = 6.42;
pub const DEFAULT_EMPLOYEES_SIGMA2: f64 = 2.24;

/// Synthetic firm-size demo defaults: the "sale" column.
pub const DEFAULT_SALE_MU: f64 = 11.37;
pub const DEFAULT_SALE_SIGMA2: f64 = 4.22;

/// Default correlation of the underlying normals in the bivariate demo.
pub const DEFAULT_RHO: f64 = 0.873;

/// Parameters of a seeded log-normal sample: `exp(N(mu, sigma2))`, `n` draws.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LogNormalSpec {
    /// Mean of the underlying normal.
    pub mu: f64,
    /// Variance of the underlying normal.
    pub sigma2: f64,
    pub n: usize,
    pub seed: u64,
}

impl LogNormalSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::InvalidSpec {
                reason: format!("mu must be finite, got {}", self.mu),
            });
        }
        if !self.sigma2.is_finite() || self.sigma2 <= 0.0 {
            return Err(Error::InvalidSpec {
                reason: format!("sigma2 must be finite and > 0, got {}", self.sigma2),
            });
        }
        if self.n < 2 {
            return Err(Error::InvalidSpec {
                reason: format!("n must be >= 2, got {}", self.n),
            });
        }
        Ok(())
    }
}

/// Parameters of a correlated pair of log-normal samples. The underlying
/// normals share correlation `rho`; both components draw from the single
/// stream seeded by [`Self::seed`] (the per-component seeds are not used).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BivariateSpec {
    pub spec_x: LogNormalSpec,
    pub spec_y: LogNormalSpec,
    /// Correlation of the underlying normals, in `[-1, 1]`.
    pub rho: f64,
    pub seed: u64,
}

impl BivariateSpec {
    /// The built-in demo pair: two firm-size-like columns with a strong
    /// underlying correlation.
    pub fn demo_defaults(n: usize, seed: u64) -> Self {
        BivariateSpec {
            spec_x: LogNormalSpec {
                mu: DEFAULT_EMPLOYEES_MU,
                sigma2: DEFAULT_EMPLOYEES_SIGMA2,
                n,
                seed,
            },
            spec_y: LogNormalSpec {
                mu: DEFAULT_SALE_MU,
                sigma2: DEFAULT_SALE_SIGMA2,
                n,
                seed,
            },
            rho: DEFAULT_RHO,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.spec_x.validate()?;
        self.spec_y.validate()?;
        if self.spec_x.n != self.spec_y.n {
            return Err(Error::InvalidSpec {
                reason: format!(
                    "component sample sizes differ: {} vs {}",
                    self.spec_x.n, self.spec_y.n
                ),
            });
        }
        if !self.rho.is_finite() || self.rho.abs() > 1.0 {
            return Err(Error::InvalidSpec {
                reason: format!("rho must lie in [-1, 1], got {}", self.rho),
            });
        }
        Ok(())
    }
}

/// Seeded source of standard normal deviates. Not shareable across threads;
/// distinct seeds give independent streams.
struct GaussianStream {
    rng: ChaCha8Rng,
}

impl GaussianStream {
    fn new(seed: u64) -> Self {
        GaussianStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// One N(0, 1) draw, consuming exactly two 64-bit RNG outputs.
    fn next_normal(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        // u1 in (0, 1] so the log never sees zero; u2 in [0, 1)
        let u1 = ((self.rng.next_u64() >> 11) + 1) as f64 * SCALE;
        let u2 = (self.rng.next_u64() >> 11) as f64 * SCALE;
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(std::f64::consts::TAU * u2)
    }
}

/// Generates `exp(N(mu, sigma2))` draws; identical output for identical
/// spec on every platform. Every value is strictly positive.
pub fn generate_lognormal(spec: &LogNormalSpec) -> Result<Series> {
    spec.validate()?;
    let sd = libm::sqrt(spec.sigma2);
    let mut stream = GaussianStream::new(spec.seed);
    let values: Vec<f64> = (0..spec.n)
        .map(|_| libm::exp(spec.mu + sd * stream.next_normal()))
        .collect();
    Series::new("lognormal", values)
}

/// Generates a correlated pair of log-normal samples.
///
/// Per draw the stream yields two independent normals `z1, z2`; the
/// underlying pair is `w1 = z1` and `w2 = rho*z1 + sqrt(1 - rho^2)*z2`,
/// then both components are scaled, shifted and exponentiated.
pub fn generate_bivariate_lognormal(spec: &BivariateSpec) -> Result<(Series, Series)> {
    spec.validate()?;
    let sd_x = libm::sqrt(spec.spec_x.sigma2);
    let sd_y = libm::sqrt(spec.spec_y.sigma2);
    let tail = libm::sqrt(1.0 - spec.rho * spec.rho);
    let mut stream = GaussianStream::new(spec.seed);
    let n = spec.spec_x.n;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let z1 = stream.next_normal();
        let z2 = stream.next_normal();
        let w2 = spec.rho * z1 + tail * z2;
        xs.push(libm::exp(spec.spec_x.mu + sd_x * z1));
        ys.push(libm::exp(spec.spec_y.mu + sd_y * w2));
    }
    Ok((Series::new("x", xs)?, Series::new("y", ys)?))
}
