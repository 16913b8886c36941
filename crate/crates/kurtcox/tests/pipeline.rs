//! End-to-end library tests of the analysis pipeline and its artifacts.

use std::fs;
use std::path::Path;

use kurtcox::boxcox::LambdaSearchConfig;
use kurtcox::ingest::{load_csv, ColumnMap};
use kurtcox::report::{
    emit_plot_scripts, run_analyze, write_synth_csv, AnalyzeConfig, ColumnSelection, InputSource,
    REPORT_FILE_NAME,
};
use kurtcox::synth::BivariateSpec;

fn synth_config(out: &Path, n: usize, seed: u64) -> AnalyzeConfig {
    AnalyzeConfig::new(
        InputSource::Synth(BivariateSpec::demo_defaults(n, seed)),
        out,
    )
}

#[test]
fn analyze_on_synth_defaults_recovers_small_lambdas() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_analyze(&synth_config(dir.path(), 50_000, 42)).unwrap();

    assert_eq!(report.columns.len(), 2);
    assert_eq!(report.columns[0].label, "employees");
    assert_eq!(report.columns[1].label, "sale");
    for column in &report.columns {
        let optimal = &column.optimal_lambda;
        assert!(
            optimal.lambda.abs() < 0.05,
            "{}: lambda {}",
            column.label,
            optimal.lambda
        );
        assert!(!optimal.at_boundary);
        // transformed data is far more normal than the raw column
        assert!(column.moments_raw.kurtosis > 10.0);
        assert!((column.moments_transformed.kurtosis - 3.0).abs() < 0.3);
        assert!(column.fits.least_squares.rss <= column.fits.moments.rss);
    }
    let pairwise = report.pairwise.as_ref().unwrap();
    assert!(pairwise.pearson_raw < pairwise.pearson_transformed);

    // every listed artifact exists on disk
    for rel in &report.artifacts {
        assert!(dir.path().join(rel).is_file(), "missing artifact {rel}");
    }
    assert!(dir.path().join(REPORT_FILE_NAME).is_file());
}

#[test]
fn report_validates_against_the_shipped_schema() {
    let dir = tempfile::tempdir().unwrap();
    run_analyze(&synth_config(dir.path(), 5_000, 9)).unwrap();

    let schema: serde_json::Value = serde_json::from_str(include_str!(
        "../schema/analysis-report.schema.json"
    ))
    .unwrap();
    let report: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join(REPORT_FILE_NAME)).unwrap()).unwrap();

    let validator = jsonschema::validator_for(&schema).unwrap();
    let failures: Vec<String> = validator
        .iter_errors(&report)
        .map(|e| format!("{}: {e}", e.instance_path))
        .collect();
    assert!(failures.is_empty(), "schema violations: {failures:#?}");
}

#[test]
fn csv_report_also_validates_against_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("firms.csv");
    write_synth_csv(&BivariateSpec::demo_defaults(3_000, 3), &csv_path).unwrap();

    let cfg = AnalyzeConfig::new(
        InputSource::Csv {
            path: csv_path,
            columns: ColumnMap::default(),
        },
        dir.path().join("out"),
    );
    run_analyze(&cfg).unwrap();

    let schema: serde_json::Value = serde_json::from_str(include_str!(
        "../schema/analysis-report.schema.json"
    ))
    .unwrap();
    let report: serde_json::Value = serde_json::from_slice(
        &fs::read(dir.path().join("out").join(REPORT_FILE_NAME)).unwrap(),
    )
    .unwrap();
    assert!(jsonschema::is_valid(&schema, &report));
}

#[test]
fn library_level_runs_are_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    run_analyze(&synth_config(dir_a.path(), 8_000, 7)).unwrap();
    run_analyze(&synth_config(dir_b.path(), 8_000, 7)).unwrap();

    let report_a = fs::read(dir_a.path().join(REPORT_FILE_NAME)).unwrap();
    let report_b = fs::read(dir_b.path().join(REPORT_FILE_NAME)).unwrap();
    assert_eq!(report_a, report_b);
}

#[test]
fn forced_boundary_optimum_is_flagged_in_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = synth_config(dir.path(), 5_000, 11);
    // log-normal data wants lambda near 0; a floor at 0.5 forces the edge
    cfg.search = LambdaSearchConfig {
        lambda_min: 0.5,
        lambda_max: 2.0,
        grid_steps: 16,
        ..LambdaSearchConfig::default()
    };
    let report = run_analyze(&cfg).unwrap();
    for column in &report.columns {
        assert!(column.optimal_lambda.at_boundary, "{}", column.label);
    }
}

#[test]
fn two_column_run_emits_five_plot_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_analyze(&synth_config(dir.path(), 3_000, 5)).unwrap();
    let scripts: Vec<&String> = report
        .artifacts
        .iter()
        .filter(|a| a.ends_with(".gp"))
        .collect();
    assert_eq!(scripts.len(), 5, "{scripts:?}");
    for name in [
        "hist_raw.gp",
        "kurtosis_curve.gp",
        "hist_transformed.gp",
        "scatter_raw.gp",
        "scatter_transformed.gp",
    ] {
        assert!(scripts.iter().any(|s| s.as_str() == name), "missing {name}");
    }

    // scripts reference data files that exist, by relative path
    for script in scripts {
        let text = fs::read_to_string(dir.path().join(script)).unwrap();
        for token in text.split('\'').skip(1).step_by(2) {
            if token.ends_with(".dat") {
                assert!(
                    dir.path().join(token).is_file(),
                    "{script} references missing {token}"
                );
            }
        }
    }
}

#[test]
fn single_column_run_omits_scatter_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = synth_config(dir.path(), 3_000, 5);
    cfg.columns = ColumnSelection::SaleOnly;
    let report = run_analyze(&cfg).unwrap();

    assert_eq!(report.columns.len(), 1);
    assert_eq!(report.columns[0].label, "sale");
    assert!(report.pairwise.is_none());
    let scripts: Vec<&String> = report
        .artifacts
        .iter()
        .filter(|a| a.ends_with(".gp"))
        .collect();
    assert_eq!(scripts.len(), 3, "{scripts:?}");
    assert!(!scripts.iter().any(|s| s.contains("scatter")));
}

#[test]
fn emit_plot_scripts_reruns_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_analyze(&synth_config(dir.path(), 3_000, 13)).unwrap();

    let first = emit_plot_scripts(&report, dir.path()).unwrap();
    let snapshot: Vec<Vec<u8>> = first.iter().map(|p| fs::read(p).unwrap()).collect();
    let second = emit_plot_scripts(&report, dir.path()).unwrap();
    assert_eq!(first, second);
    for (path, bytes) in second.iter().zip(snapshot) {
        assert_eq!(fs::read(path).unwrap(), bytes, "{path:?} changed");
    }
}

#[test]
fn synth_csv_round_trips_through_ingest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("synth.csv");
    let spec = BivariateSpec::demo_defaults(3206, 7);
    write_synth_csv(&spec, &path).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3207); // header + data rows
    assert_eq!(text.lines().next().unwrap(), "id,employees,sale");

    let dataset = load_csv(&path, &ColumnMap::default()).unwrap();
    assert_eq!(dataset.records.len(), 3206);
    assert_eq!(dataset.dropped, 0);

    // identical spec reproduces identical bytes
    let again = dir.path().join("synth_again.csv");
    write_synth_csv(&spec, &again).unwrap();
    assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());
}
