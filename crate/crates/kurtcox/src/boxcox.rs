//! The Box-Cox power transform and kurtosis-driven selection of its
//! parameter lambda.
//!
//! The transform of a strictly positive argument `x + c` is
//!
//! ```text
//! y = ((x + c)^lambda - 1) / lambda     lambda != 0
//! y = ln(x + c)                         lambda == 0
//! ```
//!
//! The two branches meet continuously: below `LAMBDA_LOG_BRANCH` the log
//! branch is used outright, and between `LAMBDA_LOG_BRANCH` and
//! `LAMBDA_EXPM1_BRANCH` the power branch is evaluated as
//! `expm1(lambda * ln(x + c)) / lambda`, because the textbook
//! `(x^lambda - 1) / lambda` cancels catastrophically near zero — which is
//! exactly where the interesting optima of heavy-tailed data live.
//!
//! [`optimize_lambda`] selects the parameter by minimizing
//! `|kurtosis(lambda) - 3|` (or `|skewness(lambda)|`) over a coarse grid,
//! then refines the best bracket with a golden-section search.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;
use crate::stats::central_moments;

/// Below this magnitude the transform evaluates the log branch directly.
pub const LAMBDA_LOG_BRANCH: f64 = 1e-8;

/// Below this magnitude (and above [`LAMBDA_LOG_BRANCH`]) the power branch
/// is computed via `expm1` to avoid cancellation.
pub const LAMBDA_EXPM1_BRANCH: f64 = 1e-4;

/// Transform parameters: the power `lambda` and the positivity shift `c`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoxCoxParams {
    pub lambda: f64,
    /// Constant added to every input so that `x + shift > 0`. Never chosen
    /// automatically; the caller owns it.
    pub shift: f64,
}

impl BoxCoxParams {
    /// Parameters with no shift, for data that is already positive.
    pub fn new(lambda: f64) -> Self {
        BoxCoxParams { lambda, shift: 0.0 }
    }

    pub fn with_shift(lambda: f64, shift: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidSearchConfig {
                reason: format!("lambda must be finite, got {lambda}"),
            });
        }
        if !shift.is_finite() || shift < 0.0 {
            return Err(Error::InvalidSearchConfig {
                reason: format!("shift must be finite and >= 0, got {shift}"),
            });
        }
        Ok(BoxCoxParams { lambda, shift })
    }
}

/// Which scalar objective the lambda search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `|kurtosis(lambda) - 3|`: distance from the normal-distribution value.
    KurtosisToNormal,
    /// `|skewness(lambda)|`: distance from symmetry.
    AbsSkewness,
}

/// Grid and refinement settings for [`optimize_lambda`] and
/// [`kurtosis_curve`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambdaSearchConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Number of evenly spaced grid evaluations, endpoints included.
    pub grid_steps: usize,
    /// Golden-section refinement stops once the bracket is narrower than this.
    pub refine_tolerance: f64,
    pub objective: Objective,
    /// Positivity shift applied to the data before every transform.
    pub shift: f64,
}

impl Default for LambdaSearchConfig {
    /// `[-2, 2]` with 81 grid points and refinement to 1e-4 covers the
    /// classical Box-Cox range.
    fn default() -> Self {
        LambdaSearchConfig {
            lambda_min: -2.0,
            lambda_max: 2.0,
            grid_steps: 81,
            refine_tolerance: 1e-4,
            objective: Objective::KurtosisToNormal,
            shift: 0.0,
        }
    }
}

impl LambdaSearchConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidSearchConfig { reason });
        if !self.lambda_min.is_finite() || !self.lambda_max.is_finite() {
            return fail(format!(
                "lambda range must be finite, got [{}, {}]",
                self.lambda_min, self.lambda_max
            ));
        }
        if self.lambda_min >= self.lambda_max {
            return fail(format!(
                "lambda_min {} must be below lambda_max {}",
                self.lambda_min, self.lambda_max
            ));
        }
        if self.grid_steps < 3 {
            return fail(format!("grid_steps must be >= 3, got {}", self.grid_steps));
        }
        if !self.refine_tolerance.is_finite() || self.refine_tolerance <= 0.0 {
            return fail(format!(
                "refine_tolerance must be finite and > 0, got {}",
                self.refine_tolerance
            ));
        }
        if !self.shift.is_finite() || self.shift < 0.0 {
            return fail(format!(
                "shift must be finite and >= 0, got {}",
                self.shift
            ));
        }
        Ok(())
    }

    /// The evenly spaced evaluation grid, endpoints exact.
    fn grid(&self) -> Vec<f64> {
        let n = self.grid_steps;
        let step = (self.lambda_max - self.lambda_min) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.lambda_max
                } else {
                    self.lambda_min + i as f64 * step
                }
            })
            .collect()
    }
}

/// One grid evaluation of the lambda search.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TracePoint {
    pub lambda: f64,
    pub kurtosis: f64,
    pub objective: f64,
}

/// Result of the lambda search.
#[derive(Debug, Clone, Serialize)]
pub struct OptimalLambda {
    /// Selected parameter.
    pub lambda: f64,
    /// Raw kurtosis of the transformed data at [`Self::lambda`].
    pub kurtosis_at_optimum: f64,
    /// Objective value at [`Self::lambda`]; never above any trace entry.
    pub objective_value: f64,
    /// True when the grid minimum sat on `lambda_min` or `lambda_max`,
    /// meaning the true optimum may lie outside the searched range.
    pub at_boundary: bool,
    /// The full grid scan, in lambda order. The objective is not guaranteed
    /// unimodal; callers can inspect the trace for additional local minima.
    pub trace: Vec<TracePoint>,
}

/// Transforms a single value. Errors if `x + shift` is not positive.
pub fn transform_one(x: f64, p: &BoxCoxParams) -> Result<f64> {
    let arg = x + p.shift;
    if arg.is_nan() || arg <= 0.0 {
        return Err(Error::NonPositiveArgument {
            value: x,
            shift: p.shift,
        });
    }
    Ok(power_transform(arg, p.lambda))
}

/// Element-wise transform; preserves order, length and label.
///
/// The error for a non-positive value reports the index of the first
/// offender and the smallest shift that would make the whole series valid.
pub fn transform_series(s: &Series, p: &BoxCoxParams) -> Result<Series> {
    if let Some((index, &value)) = s
        .values()
        .iter()
        .enumerate()
        .find(|(_, &v)| v + p.shift <= 0.0 || (v + p.shift).is_nan())
    {
        return Err(Error::NonPositiveValue {
            index,
            value,
            shift: p.shift,
            required_shift: -s.min(),
        });
    }
    let out: Vec<f64> = s
        .values()
        .iter()
        .map(|&v| power_transform(v + p.shift, p.lambda))
        .collect();
    Series::new(s.label(), out)
}

/// Inverse of [`transform_one`]: `(lambda*y + 1)^(1/lambda) - shift`, or
/// `exp(y) - shift` on the log branch.
pub fn inverse_transform(y: f64, p: &BoxCoxParams) -> Result<f64> {
    let lambda = p.lambda;
    if lambda.abs() < LAMBDA_LOG_BRANCH {
        return Ok(y.exp() - p.shift);
    }
    let base = lambda * y + 1.0;
    if base.is_nan() || base <= 0.0 {
        return Err(Error::InverseDomain { y, lambda });
    }
    let value = if lambda.abs() < LAMBDA_EXPM1_BRANCH {
        // mirror of the expm1 forward branch
        ((lambda * y).ln_1p() / lambda).exp()
    } else {
        base.powf(1.0 / lambda)
    };
    Ok(value - p.shift)
}

fn power_transform(arg: f64, lambda: f64) -> f64 {
    if lambda.abs() < LAMBDA_LOG_BRANCH {
        arg.ln()
    } else if lambda.abs() < LAMBDA_EXPM1_BRANCH {
        (lambda * arg.ln()).exp_m1() / lambda
    } else {
        (arg.powf(lambda) - 1.0) / lambda
    }
}

/// Kurtosis of the transformed series at each grid lambda: the data behind
/// a kurtosis-vs-lambda plot.
///
/// Grid points are evaluated in parallel; the result is identical to
/// sequential evaluation. A failure at any lambda is reported with that
/// lambda attached, lowest lambda first.
pub fn kurtosis_curve(s: &Series, cfg: &LambdaSearchConfig) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let shifted = shifted_values(s, cfg.shift)?;
    let grid = cfg.grid();
    let profiles: Vec<Result<MomentProfile>> = grid
        .par_iter()
        .map(|&lambda| moment_profile(&shifted, lambda))
        .collect();
    grid.iter()
        .zip(profiles)
        .map(|(&lambda, profile)| match profile {
            Ok(p) => Ok((lambda, p.kurtosis)),
            Err(e) => Err(Error::AtLambda {
                lambda,
                source: Box::new(e),
            }),
        })
        .collect()
}

/// Selects the lambda that best normalizes the series.
///
/// A coarse scan over the configured grid locates the best bracket, which a
/// golden-section search then narrows to `refine_tolerance`. On exact grid
/// ties the smaller `|lambda|` wins, preferring the log-interpretable
/// transform. The returned value is the best point seen across both phases,
/// so it never scores worse than any trace entry.
pub fn optimize_lambda(s: &Series, cfg: &LambdaSearchConfig) -> Result<OptimalLambda> {
    cfg.validate()?;
    let shifted = shifted_values(s, cfg.shift)?;
    let grid = cfg.grid();
    let profiles: Vec<Result<MomentProfile>> = grid
        .par_iter()
        .map(|&lambda| moment_profile(&shifted, lambda))
        .collect();

    let mut trace = Vec::with_capacity(grid.len());
    for (&lambda, profile) in grid.iter().zip(profiles) {
        let p = profile.map_err(|e| Error::AtLambda {
            lambda,
            source: Box::new(e),
        })?;
        trace.push(TracePoint {
            lambda,
            kurtosis: p.kurtosis,
            objective: cfg.objective.score(&p),
        });
    }

    let best_idx = best_grid_index(&trace);
    let at_boundary = best_idx == 0 || best_idx == trace.len() - 1;

    let mut best = trace[best_idx];
    let lo = trace[best_idx.saturating_sub(1)].lambda;
    let hi = trace[(best_idx + 1).min(trace.len() - 1)].lambda;
    if hi > lo {
        let refined = golden_section(&shifted, cfg, lo, hi)?;
        if refined.objective < best.objective {
            best = refined;
        }
    }

    Ok(OptimalLambda {
        lambda: best.lambda,
        kurtosis_at_optimum: best.kurtosis,
        objective_value: best.objective,
        at_boundary,
        trace,
    })
}

/// Index of the lowest-objective trace entry; exact ties go to the
/// smallest `|lambda|`, preferring the log-interpretable transform.
fn best_grid_index(trace: &[TracePoint]) -> usize {
    let mut best_idx = 0;
    for (i, point) in trace.iter().enumerate() {
        let best = &trace[best_idx];
        if point.objective < best.objective
            || (point.objective == best.objective && point.lambda.abs() < best.lambda.abs())
        {
            best_idx = i;
        }
    }
    best_idx
}

impl Objective {
    fn score(&self, p: &MomentProfile) -> f64 {
        match self {
            Objective::KurtosisToNormal => (p.kurtosis - 3.0).abs(),
            Objective::AbsSkewness => p.skewness.abs(),
        }
    }
}

/// Golden-section minimization of the search objective on `[lo, hi]`,
/// returning the best point evaluated.
fn golden_section(
    shifted: &[f64],
    cfg: &LambdaSearchConfig,
    mut lo: f64,
    mut hi: f64,
) -> Result<TracePoint> {
    const INV_PHI2: f64 = 0.381_966_011_250_105_2; // 2 - golden ratio
    const MAX_ITER: usize = 200;

    let eval = |lambda: f64| -> Result<TracePoint> {
        let p = moment_profile(shifted, lambda).map_err(|e| Error::AtLambda {
            lambda,
            source: Box::new(e),
        })?;
        Ok(TracePoint {
            lambda,
            kurtosis: p.kurtosis,
            objective: cfg.objective.score(&p),
        })
    };

    let mut a = eval(lo + INV_PHI2 * (hi - lo))?;
    let mut b = eval(hi - INV_PHI2 * (hi - lo))?;
    let mut best = if a.objective <= b.objective { a } else { b };

    let mut iterations = 0;
    while hi - lo > cfg.refine_tolerance && iterations < MAX_ITER {
        if a.objective < b.objective {
            hi = b.lambda;
            b = a;
            a = eval(lo + INV_PHI2 * (hi - lo))?;
        } else {
            lo = a.lambda;
            a = b;
            b = eval(hi - INV_PHI2 * (hi - lo))?;
        }
        let candidate = if a.objective <= b.objective { a } else { b };
        if candidate.objective < best.objective {
            best = candidate;
        }
        iterations += 1;
    }
    Ok(best)
}

fn shifted_values(s: &Series, shift: f64) -> Result<Vec<f64>> {
    if let Some((index, &value)) = s
        .values()
        .iter()
        .enumerate()
        .find(|(_, &v)| v + shift <= 0.0 || (v + shift).is_nan())
    {
        return Err(Error::NonPositiveValue {
            index,
            value,
            shift,
            required_shift: -s.min(),
        });
    }
    Ok(s.values().iter().map(|&v| v + shift).collect())
}

struct MomentProfile {
    kurtosis: f64,
    skewness: f64,
}

/// Standardized moments of the Box-Cox transform at one lambda.
///
/// On the power branch the moments are computed from the raw powers
/// `(x + c)^lambda` instead of the full `((x + c)^lambda - 1) / lambda`:
/// the two differ by an affine map, which leaves kurtosis untouched and at
/// most flips the sign of skewness (when lambda < 0). Working on the powers
/// keeps the centered values well conditioned when `(p - 1) / lambda`
/// collapses the spread against a large constant offset, e.g. for negative
/// lambda on data scaled by 1e3.
fn moment_profile(shifted: &[f64], lambda: f64) -> Result<MomentProfile> {
    let (values, flip_skew): (Vec<f64>, bool) = if lambda.abs() < LAMBDA_EXPM1_BRANCH {
        (
            shifted.iter().map(|&v| power_transform(v, lambda)).collect(),
            false,
        )
    } else {
        (
            shifted.iter().map(|&v| v.powf(lambda)).collect(),
            lambda < 0.0,
        )
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteTransform { lambda });
    }
    let m = central_moments(&values)?;
    if m.m2 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let kurtosis = m.m4 / (m.m2 * m.m2);
    if !kurtosis.is_finite() {
        return Err(Error::NonFiniteTransform { lambda });
    }
    let mut skewness = m.m3 / (m.m2 * m.m2.sqrt());
    if flip_skew {
        skewness = -skewness;
    }
    Ok(MomentProfile { kurtosis, skewness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats;
    use crate::synth::{generate_lognormal, LogNormalSpec};

    fn series(values: &[f64]) -> Series {
        Series::new("t", values.to_vec()).unwrap()
    }

    #[test]
    fn transform_one_analytic_cases() {
        let sqrt = BoxCoxParams::new(0.5);
        assert!((transform_one(4.0, &sqrt).unwrap() - 2.0).abs() < 1e-15);

        let log = BoxCoxParams::new(0.0);
        assert!((transform_one(std::f64::consts::E, &log).unwrap() - 1.0).abs() < 1e-15);

        let ident = BoxCoxParams::new(1.0);
        assert!((transform_one(10.0, &ident).unwrap() - 9.0).abs() < 1e-15);
    }

    #[test]
    fn transform_one_rejects_non_positive() {
        let p = BoxCoxParams::new(0.5);
        assert!(matches!(
            transform_one(-1.0, &p).unwrap_err(),
            Error::NonPositiveArgument { .. }
        ));
        assert!(matches!(
            transform_one(0.0, &p).unwrap_err(),
            Error::NonPositiveArgument { .. }
        ));
        // a shift can rescue it
        let p = BoxCoxParams::with_shift(0.5, 2.0).unwrap();
        assert!(transform_one(-1.0, &p).is_ok());
    }

    #[test]
    fn transform_series_examples() {
        let e = std::f64::consts::E;
        let s = series(&[1.0, e, e * e]);
        let out = transform_series(&s, &BoxCoxParams::new(0.0)).unwrap();
        for (got, want) in out.values().iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }

        let s = series(&[5.0, 2.5, 9.0]);
        let out = transform_series(&s, &BoxCoxParams::new(1.0)).unwrap();
        for (got, orig) in out.values().iter().zip(s.values()) {
            assert!((got - (orig - 1.0)).abs() < 1e-15);
        }

        let s = series(&[4.0, 9.0]);
        let out = transform_series(&s, &BoxCoxParams::new(0.5)).unwrap();
        assert!((out.values()[0] - 2.0).abs() < 1e-15);
        assert!((out.values()[1] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn transform_series_reports_first_offender_and_required_shift() {
        let s = series(&[3.0, -2.0, 0.5, -7.0]);
        let err = transform_series(&s, &BoxCoxParams::new(0.5)).unwrap_err();
        match err {
            Error::NonPositiveValue {
                index,
                value,
                required_shift,
                ..
            } => {
                assert_eq!(index, 1);
                assert_eq!(value, -2.0);
                assert_eq!(required_shift, 7.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn inverse_transform_examples() {
        let p = BoxCoxParams::new(0.5);
        assert!((inverse_transform(2.0, &p).unwrap() - 4.0).abs() < 1e-14);

        let p = BoxCoxParams::new(0.0);
        assert!((inverse_transform(1.0, &p).unwrap() - std::f64::consts::E).abs() < 1e-14);

        // round trip at a small lambda like the ones the search selects
        let p = BoxCoxParams::new(0.022);
        let y = transform_one(7.3, &p).unwrap();
        let back = inverse_transform(y, &p).unwrap();
        assert!((back - 7.3).abs() <= 1e-10 * 7.3);
    }

    #[test]
    fn inverse_transform_domain_error() {
        let p = BoxCoxParams::new(2.0);
        assert!(matches!(
            inverse_transform(-1.0, &p).unwrap_err(),
            Error::InverseDomain { .. }
        ));
    }

    #[test]
    fn branch_continuity_near_zero() {
        for x in [0.1, 1.0, 10.0, 1000.0] {
            for lambda in [1e-6, -1e-6, 1e-9, -1e-9] {
                let got = transform_one(x, &BoxCoxParams::new(lambda)).unwrap();
                let log = x.ln();
                assert!(
                    (got - log).abs() <= 1e-5 * (1.0 + log.abs()),
                    "x={x} lambda={lambda}: {got} vs {log}"
                );
            }
        }
    }

    #[test]
    fn curve_kurtosis_matches_direct_transform_route() {
        // the power-space evaluation must agree with kurtosis of the
        // literal transform output
        let spec = LogNormalSpec {
            mu: 1.0,
            sigma2: 0.8,
            n: 4000,
            seed: 11,
        };
        let s = generate_lognormal(&spec).unwrap();
        let cfg = LambdaSearchConfig {
            grid_steps: 17,
            ..LambdaSearchConfig::default()
        };
        let curve = kurtosis_curve(&s, &cfg).unwrap();
        for (lambda, kurt) in curve {
            let t = transform_series(&s, &BoxCoxParams::new(lambda)).unwrap();
            let direct = stats::kurtosis(&t).unwrap();
            assert!(
                (kurt - direct).abs() <= 1e-11 * direct.max(1.0),
                "lambda={lambda}: {kurt} vs {direct}"
            );
        }
    }

    #[test]
    fn curve_minimum_sits_near_zero_for_lognormal_data() {
        let spec = LogNormalSpec {
            mu: 6.42,
            sigma2: 2.24,
            n: 20_000,
            seed: 3,
        };
        let s = generate_lognormal(&spec).unwrap();
        let curve = kurtosis_curve(&s, &LambdaSearchConfig::default()).unwrap();
        let (argmin, _) = curve
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(argmin.abs() <= 0.1, "argmin {argmin}");
    }

    #[test]
    fn curve_minimum_sits_near_one_for_shifted_normal_data() {
        // ln of a log-normal sample is the underlying normal; N(5, 1)
        // stays positive and lambda = 1 leaves it untouched
        let spec = LogNormalSpec {
            mu: 5.0,
            sigma2: 1.0,
            n: 50_000,
            seed: 4,
        };
        let base = generate_lognormal(&spec).unwrap();
        let s = Series::new("normal", base.values().iter().map(|v| v.ln()).collect()).unwrap();
        assert!(s.min() > 0.0);
        let curve = kurtosis_curve(&s, &LambdaSearchConfig::default()).unwrap();
        let (argmin, _) = curve
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((argmin - 1.0).abs() <= 0.4, "argmin {argmin}");
    }

    #[test]
    fn exact_grid_ties_prefer_the_smallest_lambda() {
        let point = |lambda: f64, objective: f64| TracePoint {
            lambda,
            kurtosis: 3.0 + objective,
            objective,
        };
        // tie among -0.25, 0.5 and 1.0: the smallest magnitude wins
        let trace = vec![
            point(-2.0, 0.5),
            point(-0.25, 0.125),
            point(0.5, 0.125),
            point(1.0, 0.125),
            point(2.0, 0.9),
        ];
        assert_eq!(best_grid_index(&trace), 1);
        // and the winner is magnitude-based, not first-seen
        let trace = vec![point(-0.5, 0.125), point(0.25, 0.125)];
        assert_eq!(best_grid_index(&trace), 1);
    }

    #[test]
    fn two_point_series_gives_a_flat_unit_kurtosis_curve() {
        // any two-point series has kurtosis 1 at every lambda (up to
        // rounding), so the objective is flat at 2 across the whole grid
        let s = series(&[2.0, 5.0]);
        let opt = optimize_lambda(&s, &LambdaSearchConfig::default()).unwrap();
        assert!((opt.kurtosis_at_optimum - 1.0).abs() < 1e-12);
        assert!((opt.objective_value - 2.0).abs() < 1e-12);
        for p in &opt.trace {
            assert!((p.kurtosis - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_errors_on_constant_series() {
        let s = series(&[2.0, 2.0, 2.0, 2.0]);
        let err = kurtosis_curve(&s, &LambdaSearchConfig::default()).unwrap_err();
        match err {
            Error::AtLambda { lambda, source } => {
                assert_eq!(lambda, -2.0); // first grid point
                assert!(matches!(*source, Error::ZeroVariance));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn optimize_recovers_log_transform_for_lognormal_data() {
        let spec = LogNormalSpec {
            mu: 6.42,
            sigma2: 2.24,
            n: 50_000,
            seed: 5,
        };
        let s = generate_lognormal(&spec).unwrap();
        let cfg = LambdaSearchConfig::default();
        let opt = optimize_lambda(&s, &cfg).unwrap();
        assert!(opt.lambda.abs() <= 0.05, "lambda {}", opt.lambda);
        assert!(
            (2.8..=3.2).contains(&opt.kurtosis_at_optimum),
            "kurtosis {}",
            opt.kurtosis_at_optimum
        );
        assert!(!opt.at_boundary);
        assert_eq!(opt.trace.len(), cfg.grid_steps);
        for point in &opt.trace {
            assert!(opt.objective_value <= point.objective);
            assert!(point.kurtosis >= 1.0);
        }
    }

    #[test]
    fn optimize_agrees_with_dense_grid_oracle() {
        let spec = LogNormalSpec {
            mu: 2.0,
            sigma2: 1.5,
            n: 20_000,
            seed: 9,
        };
        let s = generate_lognormal(&spec).unwrap();
        let cfg = LambdaSearchConfig::default();
        let opt = optimize_lambda(&s, &cfg).unwrap();

        // brute force: dense grid over the same range, objective |k - 3|
        let dense = LambdaSearchConfig {
            grid_steps: 2001,
            ..cfg
        };
        let curve = kurtosis_curve(&s, &dense).unwrap();
        let oracle = curve
            .iter()
            .copied()
            .min_by(|a, b| (a.1 - 3.0).abs().total_cmp(&(b.1 - 3.0).abs()))
            .unwrap();
        assert!(
            (opt.lambda - oracle.0).abs() <= 2.0 * (4.0 / 2000.0),
            "optimize {} vs dense-grid oracle {}",
            opt.lambda,
            oracle.0
        );
        assert!(opt.objective_value <= (oracle.1 - 3.0).abs() + 1e-12);
    }

    #[test]
    fn optimize_flags_boundary_optimum() {
        let spec = LogNormalSpec {
            mu: 6.42,
            sigma2: 2.24,
            n: 10_000,
            seed: 17,
        };
        let s = generate_lognormal(&spec).unwrap();
        // objective decreases toward lambda = 0.5, the range's lower edge
        let cfg = LambdaSearchConfig {
            lambda_min: 0.5,
            lambda_max: 2.0,
            grid_steps: 16,
            ..LambdaSearchConfig::default()
        };
        let opt = optimize_lambda(&s, &cfg).unwrap();
        assert!(opt.at_boundary);
        assert!(opt.lambda <= 0.6);
    }

    #[test]
    fn optimize_with_skewness_objective() {
        let spec = LogNormalSpec {
            mu: 1.0,
            sigma2: 1.0,
            n: 30_000,
            seed: 21,
        };
        let s = generate_lognormal(&spec).unwrap();
        let cfg = LambdaSearchConfig {
            objective: Objective::AbsSkewness,
            ..LambdaSearchConfig::default()
        };
        let opt = optimize_lambda(&s, &cfg).unwrap();
        // the log transform symmetrizes exact log-normal data
        assert!(opt.lambda.abs() <= 0.05, "lambda {}", opt.lambda);
        let t = transform_series(&s, &BoxCoxParams::new(opt.lambda)).unwrap();
        assert!(stats::skewness(&t).unwrap().abs() <= 0.05);
    }

    #[test]
    fn optimize_rejects_bad_config() {
        let s = series(&[1.0, 2.0, 3.0]);
        let bad = LambdaSearchConfig {
            lambda_min: 1.0,
            lambda_max: -1.0,
            ..LambdaSearchConfig::default()
        };
        assert!(matches!(
            optimize_lambda(&s, &bad).unwrap_err(),
            Error::InvalidSearchConfig { .. }
        ));
        let bad = LambdaSearchConfig {
            grid_steps: 2,
            ..LambdaSearchConfig::default()
        };
        assert!(matches!(
            optimize_lambda(&s, &bad).unwrap_err(),
            Error::InvalidSearchConfig { .. }
        ));
    }

    #[test]
    fn shift_rides_through_the_search() {
        let spec = LogNormalSpec {
            mu: 0.5,
            sigma2: 1.2,
            n: 5_000,
            seed: 23,
        };
        let raw = generate_lognormal(&spec).unwrap();
        // push the data below zero, then search with the rescuing shift
        let shifted_down: Vec<f64> = raw.values().iter().map(|v| v - 10.0).collect();
        let s = Series::new("shifted", shifted_down).unwrap();
        let cfg = LambdaSearchConfig::default();
        assert!(matches!(
            optimize_lambda(&s, &cfg).unwrap_err(),
            Error::NonPositiveValue { .. }
        ));
        let cfg = LambdaSearchConfig {
            shift: 10.0,
            ..cfg
        };
        assert!(optimize_lambda(&s, &cfg).is_ok());
    }
}
