//! The Box-Cox transform, its branches, and the inverse.
//!
//! Run with: cargo run --example transform_roundtrip

use kurtcox::boxcox::{inverse_transform, transform_one, transform_series, BoxCoxParams};
use kurtcox::series::Series;

fn main() {
    println!("=== Box-Cox Transform ===\n");

    println!("y = ((x + c)^lambda - 1) / lambda   (lambda != 0)");
    println!("y = ln(x + c)                       (lambda == 0)\n");

    println!("transform of x = 16 at classic lambda values:");
    for lambda in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
        let y = transform_one(16.0, &BoxCoxParams::new(lambda)).unwrap();
        println!("  lambda = {lambda:>4}: {y:.6}");
    }

    println!("\n--- Branch continuity near lambda = 0 ---");
    for lambda in [1e-2, 1e-4, 1e-6, 1e-8, 0.0] {
        let y = transform_one(10.0, &BoxCoxParams::new(lambda)).unwrap();
        println!("  lambda = {lambda:>6e}: {y:.12}   (ln 10 = {:.12})", 10f64.ln());
    }

    println!("\n--- Series transform ---");
    let s = Series::new("demo", vec![1.0, 4.0, 9.0, 16.0, 25.0]).unwrap();
    let params = BoxCoxParams::new(0.5);
    let t = transform_series(&s, &params).unwrap();
    println!("original:    {:?}", s.values());
    println!("lambda 0.5:  {:?}", t.values());

    let restored: Vec<f64> = t
        .values()
        .iter()
        .map(|&y| inverse_transform(y, &params).unwrap())
        .collect();
    println!("restored:    {restored:?}");
    let worst = s
        .values()
        .iter()
        .zip(&restored)
        .map(|(a, b)| (a - b).abs() / a)
        .fold(0.0, f64::max);
    println!("worst relative round-trip error: {worst:.2e}");

    println!("\n--- Shift for data touching zero ---");
    let with_zero = Series::new("zeros", vec![0.0, 1.0, 4.0]).unwrap();
    match transform_series(&with_zero, &BoxCoxParams::new(0.5)) {
        Err(e) => println!("without shift: {e}"),
        Ok(_) => unreachable!(),
    }
    let shifted = BoxCoxParams::with_shift(0.5, 1.0).unwrap();
    let t = transform_series(&with_zero, &shifted).unwrap();
    println!("with shift 1:  {:?}", t.values());

    println!("\n--- Inverse domain ---");
    // (lambda*y + 1) must stay positive for the inverse to exist
    let p = BoxCoxParams::new(2.0);
    match inverse_transform(-1.0, &p) {
        Err(e) => println!("inverse of y = -1 at lambda = 2: {e}"),
        Ok(_) => unreachable!(),
    }
}
