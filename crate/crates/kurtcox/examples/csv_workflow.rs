//! Writing, loading and validating CSV data.
//!
//! Run with: cargo run --example csv_workflow

use std::fs;

use kurtcox::ingest::{load_csv, ColumnMap, ColumnRole};
use kurtcox::report::write_synth_csv;
use kurtcox::stats::moment_summary;
use kurtcox::synth::BivariateSpec;

fn main() {
    println!("=== CSV Workflow ===\n");

    let dir = std::env::temp_dir().join("kurtcox-csv-example");
    fs::create_dir_all(&dir).unwrap();

    // generate a synthetic file in the ingest format
    let path = dir.join("firms.csv");
    let spec = BivariateSpec::demo_defaults(3206, 7);
    write_synth_csv(&spec, &path).unwrap();
    println!("wrote {}", path.display());
    let text = fs::read_to_string(&path).unwrap();
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    println!("  ... {} data rows total", text.lines().count() - 1);

    // load it back
    let dataset = load_csv(&path, &ColumnMap::default()).unwrap();
    println!(
        "\nloaded {} records, {} dropped",
        dataset.records.len(),
        dataset.dropped
    );
    let employees = dataset.column(ColumnRole::Employees);
    let sale = dataset.column(ColumnRole::Sale);
    println!("employees: {:?}", moment_summary(&employees).unwrap());
    println!("sale:      {:?}", moment_summary(&sale).unwrap());

    // validation drops bad rows instead of guessing
    println!("\n--- Validation ---");
    let messy = dir.join("messy.csv");
    fs::write(
        &messy,
        "id,employees,sale\n\
         a,10,100\n\
         b,abc,200\n\
         c,-5,300\n\
         d,0,400\n\
         e,20,\n\
         f,30,600\n",
    )
    .unwrap();
    let dataset = load_csv(&messy, &ColumnMap::default()).unwrap();
    println!(
        "messy file: {} valid records, {} dropped (non-numeric, negative, zero, missing)",
        dataset.records.len(),
        dataset.dropped
    );

    // column headers are remappable
    println!("\n--- Header mapping ---");
    let renamed = dir.join("renamed.csv");
    fs::write(&renamed, "headcount,revenue\n10,100\n20,200\n").unwrap();
    match load_csv(&renamed, &ColumnMap::default()) {
        Err(e) => println!("default headers fail: {e}"),
        Ok(_) => unreachable!(),
    }
    let map = ColumnMap {
        employees: "headcount".into(),
        sale: "revenue".into(),
    };
    let dataset = load_csv(&renamed, &map).unwrap();
    println!("with --col-employees headcount --col-sale revenue: {} records", dataset.records.len());
}
