//! Population-moment statistics on a series.
//!
//! Run with: cargo run --example moments

use kurtcox::series::Series;
use kurtcox::stats::{kurtosis, mean, moment_summary, pearson, skewness, variance};
use kurtcox::synth::{generate_lognormal, LogNormalSpec};

fn main() {
    println!("=== Moment Statistics ===\n");

    let s = Series::new("demo", vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
    println!("series: {:?}", s.values());
    println!("  mean     = {}", mean(&s));
    println!("  variance = {}   (population, divisor n)", variance(&s).unwrap());
    println!("  skewness = {}", skewness(&s).unwrap());
    println!("  kurtosis = {}   (raw: normal = 3, not excess)", kurtosis(&s).unwrap());

    // one call for all four
    let summary = moment_summary(&s).unwrap();
    println!("\nmoment_summary: {summary:?}");

    // standardized moments ignore affine maps of the data
    println!("\n--- Affine invariance ---");
    let mapped = Series::new(
        "mapped",
        s.values().iter().map(|v| 100.0 * v - 40.0).collect::<Vec<_>>(),
    )
    .unwrap();
    println!("series * 100 - 40:");
    println!("  skewness = {}", skewness(&mapped).unwrap());
    println!("  kurtosis = {}", kurtosis(&mapped).unwrap());

    // a normal-looking sample scores kurtosis near 3
    println!("\n--- Large samples ---");
    let spec = LogNormalSpec {
        mu: 0.0,
        sigma2: 1.0,
        n: 100_000,
        seed: 42,
    };
    let lognormal = generate_lognormal(&spec).unwrap();
    let normal = Series::new(
        "normal",
        lognormal.values().iter().map(|v| v.ln()).collect::<Vec<_>>(),
    )
    .unwrap();
    println!(
        "log-normal sample (n = 1e5): skewness = {:.3}, kurtosis = {:.2}",
        skewness(&lognormal).unwrap(),
        kurtosis(&lognormal).unwrap()
    );
    println!(
        "its log (exact normal):      skewness = {:.3}, kurtosis = {:.3}",
        skewness(&normal).unwrap(),
        kurtosis(&normal).unwrap()
    );

    println!("\n--- Pearson correlation ---");
    let x = Series::new("x", vec![1.0, 2.0, 3.0]).unwrap();
    let y = Series::new("y", vec![1.0, 3.0, 2.0]).unwrap();
    println!("pearson([1,2,3], [1,3,2]) = {}", pearson(&x, &y).unwrap());
    let linear = Series::new("2x+1", vec![3.0, 5.0, 7.0]).unwrap();
    println!("pearson([1,2,3], [3,5,7]) = {}", pearson(&x, &linear).unwrap());

    // degenerate inputs error instead of returning NaN
    println!("\n--- Error paths ---");
    let constant = Series::new("flat", vec![4.0, 4.0, 4.0]).unwrap();
    println!("kurtosis of a constant series: {}", kurtosis(&constant).unwrap_err());
    println!("variance of a singleton:       {}", variance(&Series::new("one", vec![5.0]).unwrap()).unwrap_err());
}
