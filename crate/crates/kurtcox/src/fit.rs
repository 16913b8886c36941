//! Histogram construction and Gaussian density fitting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;
use crate::stats;

/// Equal-width binned density representation of a series.
///
/// `bin_edges` has one more entry than `counts`/`densities`. Interior bins
/// are right-open; the last bin is right-closed so the maximum lands inside.
/// Densities are `count / (n * width)`, so they integrate to one.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
    pub n_total: u64,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.bin_edges[self.bin_edges.len() - 1] - self.bin_edges[0])
            / (self.bin_edges.len() - 1) as f64
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }
}

/// How a [`GaussianFit`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    Moments,
    LeastSquares,
}

/// A normal density `exp(-(x - mu)^2 / (2 sigma2)) / sqrt(2 pi sigma2)`
/// fitted to a histogram, with its residual sum of squares over the bins.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GaussianFit {
    pub mu: f64,
    pub sigma2: f64,
    /// Sum of squared density residuals over all bins.
    pub rss: f64,
    pub method: FitMethod,
    /// True when least-squares refinement could not improve on its
    /// initialization and returned it unchanged.
    pub stalled: bool,
}

/// The normal probability density.
pub fn normal_pdf(x: f64, mu: f64, sigma2: f64) -> f64 {
    let d = x - mu;
    (-d * d / (2.0 * sigma2)).exp() / (std::f64::consts::TAU * sigma2).sqrt()
}

/// Bins a series into `bins` equal-width bins spanning `[min, max]`.
pub fn build_histogram(s: &Series, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::ZeroBins);
    }
    let n = s.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let min = s.min();
    let max = s.max();
    if min == max {
        return Err(Error::DegenerateRange { value: min });
    }
    let width = (max - min) / bins as f64;

    let mut counts = vec![0u64; bins];
    for &v in s.values() {
        let idx = ((v - min) / width) as usize;
        counts[idx.min(bins - 1)] += 1;
    }

    let mut bin_edges: Vec<f64> = (0..=bins).map(|i| min + i as f64 * width).collect();
    bin_edges[bins] = max;
    let densities = counts
        .iter()
        .map(|&c| c as f64 / (n as f64 * width))
        .collect();
    Ok(Histogram {
        bin_edges,
        counts,
        densities,
        n_total: n as u64,
    })
}

/// Gaussian fit from the series' own moments: `mu = mean`, `sigma2 =
/// population variance`, with the residual evaluated against the histogram
/// used for reporting.
pub fn fit_gaussian_moments(s: &Series, hist: &Histogram) -> Result<GaussianFit> {
    let mu = stats::mean(s);
    let sigma2 = stats::variance(s)?;
    if sigma2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let rss = residual_sum_of_squares(hist, mu, sigma2)?;
    Ok(GaussianFit {
        mu,
        sigma2,
        rss,
        method: FitMethod::Moments,
        stalled: false,
    })
}

/// Refines `(mu, sigma2)` by Gauss-Newton least squares on the bin
/// densities, starting from `init`.
///
/// Iterations are capped at 100 and each accepted step strictly decreases
/// the residual, so the returned `rss` never exceeds `init.rss`. If no step
/// improves on the initialization the fit comes back value-identical to
/// `init` with [`GaussianFit::stalled`] set.
pub fn fit_gaussian_least_squares(hist: &Histogram, init: &GaussianFit) -> Result<GaussianFit> {
    const MAX_ITERATIONS: usize = 100;
    const RELATIVE_RSS_CONVERGENCE: f64 = 1e-10;
    const MAX_BACKTRACKS: u32 = 30;

    if !init.sigma2.is_finite() || init.sigma2 <= 0.0 {
        return Err(Error::InvalidFitInit {
            sigma2: init.sigma2,
        });
    }
    let centers = hist.bin_centers();

    let mut mu = init.mu;
    let mut sigma2 = init.sigma2;
    let mut rss = residual_sum_of_squares(hist, mu, sigma2)?;
    let mut improved = false;

    for _ in 0..MAX_ITERATIONS {
        // normal equations of the 2-parameter Gauss-Newton step
        let (mut jtj11, mut jtj12, mut jtj22) = (0.0, 0.0, 0.0);
        let (mut jtr1, mut jtr2) = (0.0, 0.0);
        for (&c, &d) in centers.iter().zip(&hist.densities) {
            let model = normal_pdf(c, mu, sigma2);
            let r = d - model;
            let dev = c - mu;
            let g_mu = model * dev / sigma2;
            let g_s2 = model * (dev * dev / (2.0 * sigma2 * sigma2) - 0.5 / sigma2);
            jtj11 += g_mu * g_mu;
            jtj12 += g_mu * g_s2;
            jtj22 += g_s2 * g_s2;
            jtr1 += g_mu * r;
            jtr2 += g_s2 * r;
        }
        let det = jtj11 * jtj22 - jtj12 * jtj12;
        if !det.is_finite() || det.abs() <= f64::MIN_POSITIVE {
            break;
        }
        let step_mu = (jtj22 * jtr1 - jtj12 * jtr2) / det;
        let step_s2 = (jtj11 * jtr2 - jtj12 * jtr1) / det;
        if !step_mu.is_finite() || !step_s2.is_finite() {
            break;
        }

        // backtrack until the step both stays in-domain and reduces the rss
        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let mu_cand = mu + scale * step_mu;
            let s2_cand = sigma2 + scale * step_s2;
            if s2_cand > 0.0 {
                if let Ok(rss_cand) = residual_sum_of_squares(hist, mu_cand, s2_cand) {
                    if rss_cand < rss {
                        accepted = Some((mu_cand, s2_cand, rss_cand));
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        let Some((mu_new, s2_new, rss_new)) = accepted else {
            break;
        };
        let rss_drop = rss - rss_new;
        mu = mu_new;
        sigma2 = s2_new;
        rss = rss_new;
        improved = true;
        if rss_drop <= RELATIVE_RSS_CONVERGENCE * rss.max(f64::MIN_POSITIVE) {
            break;
        }
    }

    if !improved {
        return Ok(GaussianFit {
            mu: init.mu,
            sigma2: init.sigma2,
            rss,
            method: FitMethod::LeastSquares,
            stalled: true,
        });
    }
    Ok(GaussianFit {
        mu,
        sigma2,
        rss,
        method: FitMethod::LeastSquares,
        stalled: false,
    })
}

fn residual_sum_of_squares(hist: &Histogram, mu: f64, sigma2: f64) -> Result<f64> {
    let mut rss = 0.0;
    for (&c, &d) in hist.bin_centers().iter().zip(&hist.densities) {
        let r = d - normal_pdf(c, mu, sigma2);
        rss += r * r;
    }
    if !rss.is_finite() {
        return Err(Error::NonFiniteResidual);
    }
    Ok(rss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate_lognormal, LogNormalSpec};

    fn series(values: &[f64]) -> Series {
        Series::new("t", values.to_vec()).unwrap()
    }

    #[test]
    fn histogram_even_split_with_right_closed_upper_bin() {
        let h = build_histogram(&series(&[0.0, 1.0, 2.0, 3.0]), 2).unwrap();
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!(h.n_total, 4);
        assert_eq!(h.bin_edges, vec![0.0, 1.5, 3.0]);
    }

    #[test]
    fn histogram_density_integrates_to_one() {
        let spec = LogNormalSpec {
            mu: 1.0,
            sigma2: 0.5,
            n: 5000,
            seed: 2,
        };
        let s = generate_lognormal(&spec).unwrap();
        let h = build_histogram(&s, 37).unwrap();
        let integral: f64 = h.densities.iter().map(|d| d * h.bin_width()).sum();
        assert!((integral - 1.0).abs() <= 1e-9, "integral {integral}");
        assert_eq!(h.counts.iter().sum::<u64>(), h.n_total);
    }

    #[test]
    fn histogram_of_uniform_sample_is_flat() {
        // uniform(0, 1) via the quantile map of a seeded stream substitute:
        // use evenly spread points with deterministic jitter
        let vals: Vec<f64> = (0..100_000)
            .map(|i| {
                let u = (i as f64 + 0.5) / 100_000.0;
                let jitter = ((i as u64).wrapping_mul(0x9e3779b97f4a7c15) >> 11) as f64
                    / (1u64 << 53) as f64;
                (u + jitter * 1e-5).min(1.0)
            })
            .collect();
        let h = build_histogram(&series(&vals), 10).unwrap();
        for &d in &h.densities {
            assert!((d - 1.0).abs() <= 0.1, "density {d}");
        }
    }

    #[test]
    fn histogram_rejects_degenerate_range() {
        assert!(matches!(
            build_histogram(&series(&[4.0, 4.0, 4.0]), 5).unwrap_err(),
            Error::DegenerateRange { value } if value == 4.0
        ));
        assert!(matches!(
            build_histogram(&series(&[1.0, 2.0]), 0).unwrap_err(),
            Error::ZeroBins
        ));
    }

    #[test]
    fn moment_fit_small_example() {
        let s = series(&[0.0, 2.0]);
        let h = build_histogram(&s, 2).unwrap();
        let fit = fit_gaussian_moments(&s, &h).unwrap();
        assert_eq!(fit.mu, 1.0);
        assert_eq!(fit.sigma2, 1.0);
        assert_eq!(fit.method, FitMethod::Moments);
        assert!(fit.rss.is_finite());
    }

    #[test]
    fn moment_fit_recovers_generator_parameters() {
        let spec = LogNormalSpec {
            mu: 6.42,
            sigma2: 2.24,
            n: 100_000,
            seed: 6,
        };
        let s = generate_lognormal(&spec).unwrap();
        let logs = Series::new("log", s.values().iter().map(|v| v.ln()).collect()).unwrap();
        let h = build_histogram(&logs, 50).unwrap();
        let fit = fit_gaussian_moments(&logs, &h).unwrap();
        assert!((fit.mu - 6.42).abs() <= 0.03, "mu {}", fit.mu);
        assert!((fit.sigma2 - 2.24).abs() <= 0.05, "sigma2 {}", fit.sigma2);
    }

    #[test]
    fn moment_fit_rejects_constant_series() {
        let s = series(&[0.0, 2.0]);
        let h = build_histogram(&s, 2).unwrap();
        let flat = series(&[3.0, 3.0, 3.0]);
        assert!(fit_gaussian_moments(&flat, &h).is_err());
    }

    /// Histogram whose densities are exact normal pdf values at the bin
    /// centers; the least-squares objective is zero at `(mu, sigma2)`.
    fn exact_gaussian_histogram(mu: f64, sigma2: f64, bins: usize, span: f64) -> Histogram {
        let sd = sigma2.sqrt();
        let lo = mu - span * sd;
        let hi = mu + span * sd;
        let width = (hi - lo) / bins as f64;
        let bin_edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let densities: Vec<f64> = (0..bins)
            .map(|i| normal_pdf(lo + (i as f64 + 0.5) * width, mu, sigma2))
            .collect();
        Histogram {
            bin_edges,
            counts: vec![0; bins],
            densities,
            n_total: 0,
        }
    }

    #[test]
    fn least_squares_recovers_exact_gaussian() {
        let h = exact_gaussian_histogram(0.0, 1.0, 60, 5.0);
        let init = GaussianFit {
            mu: 0.4,
            sigma2: 1.7,
            rss: f64::NAN,
            method: FitMethod::Moments,
            stalled: false,
        };
        let fit = fit_gaussian_least_squares(&h, &init).unwrap();
        assert!(fit.mu.abs() <= 1e-6, "mu {}", fit.mu);
        assert!((fit.sigma2 - 1.0).abs() <= 1e-6, "sigma2 {}", fit.sigma2);
        assert!(!fit.stalled);
        assert_eq!(fit.method, FitMethod::LeastSquares);
    }

    #[test]
    fn least_squares_never_beats_its_rss_bound() {
        let spec = LogNormalSpec {
            mu: 6.42,
            sigma2: 2.24,
            n: 50_000,
            seed: 8,
        };
        let s = generate_lognormal(&spec).unwrap();
        let logs = Series::new("log", s.values().iter().map(|v| v.ln()).collect()).unwrap();
        let h = build_histogram(&logs, 50).unwrap();
        let init = fit_gaussian_moments(&logs, &h).unwrap();
        let fit = fit_gaussian_least_squares(&h, &init).unwrap();
        assert!(fit.rss <= init.rss, "{} vs {}", fit.rss, init.rss);
    }

    #[test]
    fn least_squares_flags_a_stall_instead_of_erroring() {
        // symmetric two-cluster histogram with the humps at exactly one
        // standard deviation of the init: the Gauss-Newton gradient
        // vanishes there, so no step can improve and the fit must come
        // back unchanged and flagged
        let d0 = normal_pdf(0.0, 0.0, 1.0);
        let side = (1.0 - d0) / 2.0;
        let h = Histogram {
            bin_edges: vec![-1.5, -0.5, 0.5, 1.5],
            counts: vec![400, 200, 400],
            densities: vec![side, d0, side],
            n_total: 1000,
        };
        let init = GaussianFit {
            mu: 0.0,
            sigma2: 1.0,
            rss: f64::NAN,
            method: FitMethod::Moments,
            stalled: false,
        };
        let fit = fit_gaussian_least_squares(&h, &init).unwrap();
        assert!(fit.stalled);
        assert_eq!(fit.mu, 0.0);
        assert_eq!(fit.sigma2, 1.0);
        assert!(fit.rss > 0.0);
    }

    #[test]
    fn least_squares_rejects_bad_init() {
        let h = exact_gaussian_histogram(0.0, 1.0, 10, 4.0);
        let init = GaussianFit {
            mu: 0.0,
            sigma2: -1.0,
            rss: 0.0,
            method: FitMethod::Moments,
            stalled: false,
        };
        assert!(matches!(
            fit_gaussian_least_squares(&h, &init).unwrap_err(),
            Error::InvalidFitInit { .. }
        ));
    }

    #[test]
    fn moment_fit_follows_affine_maps() {
        let vals: Vec<f64> = (0..500).map(|i| (i as f64 * 0.7).sin() * 3.0 + 10.0).collect();
        let s = series(&vals);
        let h = build_histogram(&s, 20).unwrap();
        let base = fit_gaussian_moments(&s, &h).unwrap();

        let (a, b) = (2.5, -4.0);
        let mapped = series(&vals.iter().map(|v| a * v + b).collect::<Vec<_>>());
        let hm = build_histogram(&mapped, 20).unwrap();
        let fit = fit_gaussian_moments(&mapped, &hm).unwrap();
        assert!((fit.mu - (a * base.mu + b)).abs() <= 1e-9 * fit.mu.abs().max(1.0));
        assert!((fit.sigma2 - a * a * base.sigma2).abs() <= 1e-9 * fit.sigma2.max(1.0));
    }
}
