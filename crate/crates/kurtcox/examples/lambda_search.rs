//! Kurtosis-driven selection of the Box-Cox parameter.
//!
//! Run with: cargo run --example lambda_search

use kurtcox::boxcox::{
    kurtosis_curve, optimize_lambda, LambdaSearchConfig, Objective,
};
use kurtcox::series::Series;
use kurtcox::stats::kurtosis;
use kurtcox::synth::{generate_lognormal, LogNormalSpec};

fn main() {
    println!("=== Lambda Selection ===\n");

    // heavy-tailed sample: kurtosis far above the normal value 3
    let spec = LogNormalSpec {
        mu: 6.42,
        sigma2: 2.24,
        n: 50_000,
        seed: 42,
    };
    let s = generate_lognormal(&spec).unwrap();
    println!(
        "log-normal sample, n = {}: raw kurtosis = {:.1}",
        s.len(),
        kurtosis(&s).unwrap()
    );

    // the kurtosis curve dips toward 3 near lambda = 0
    println!("\nkurtosis as a function of lambda (coarse grid):");
    let coarse = LambdaSearchConfig {
        grid_steps: 9,
        ..LambdaSearchConfig::default()
    };
    for (lambda, k) in kurtosis_curve(&s, &coarse).unwrap() {
        let bar_len = (k.ln().max(0.0) * 8.0) as usize;
        println!("  lambda = {lambda:>5.1}: kurtosis = {k:>10.2} {}", "#".repeat(bar_len));
    }

    // full search: coarse grid, then golden-section refinement
    let cfg = LambdaSearchConfig::default();
    let opt = optimize_lambda(&s, &cfg).unwrap();
    println!("\nselected lambda_c = {:.5}", opt.lambda);
    println!("kurtosis(lambda_c) = {:.4}  (normal = 3)", opt.kurtosis_at_optimum);
    println!("objective |kurtosis - 3| = {:.2e}", opt.objective_value);
    println!("grid points scanned = {}", opt.trace.len());
    println!("optimum on range boundary: {}", opt.at_boundary);

    // a log transform is nearly optimal for log-normal data, as expected
    println!("\n--- Alternative objective: |skewness| ---");
    let cfg_skew = LambdaSearchConfig {
        objective: Objective::AbsSkewness,
        ..LambdaSearchConfig::default()
    };
    let opt_skew = optimize_lambda(&s, &cfg_skew).unwrap();
    println!("lambda_c by skewness = {:.5}", opt_skew.lambda);

    // a boundary-limited range flags the result instead of hiding it
    println!("\n--- Restricted range [0.5, 2.0] ---");
    let narrow = LambdaSearchConfig {
        lambda_min: 0.5,
        lambda_max: 2.0,
        grid_steps: 31,
        ..LambdaSearchConfig::default()
    };
    let pinned = optimize_lambda(&s, &narrow).unwrap();
    println!(
        "lambda_c = {:.4}, at_boundary = {} (true optimum lies left of the range)",
        pinned.lambda, pinned.at_boundary
    );

    // already-normal data keeps lambda near 1, the identity transform
    println!("\n--- Normal data is a fixed point ---");
    let base = generate_lognormal(&LogNormalSpec {
        mu: 5.0,
        sigma2: 1.0,
        n: 100_000,
        seed: 4,
    })
    .unwrap();
    let normal = Series::new(
        "normal",
        base.values().iter().map(|v| v.ln()).collect::<Vec<_>>(),
    )
    .unwrap();
    let opt = optimize_lambda(&normal, &LambdaSearchConfig::default()).unwrap();
    println!("N(5, 1) sample: lambda_c = {:.4}", opt.lambda);
}
