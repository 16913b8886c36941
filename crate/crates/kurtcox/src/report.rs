//! Pipeline orchestration: run the full analysis, write the JSON report
//! and emit plot scripts plus their data files.
//!
//! All outputs are deterministic: identical input bytes and configuration
//! produce byte-identical artifacts. Floats are written in Rust's shortest
//! round-trip form and every collection is emitted in a fixed order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::boxcox::{optimize_lambda, transform_series, BoxCoxParams, LambdaSearchConfig, OptimalLambda};
use crate::error::{Error, Result};
use crate::fit::{build_histogram, fit_gaussian_least_squares, fit_gaussian_moments, GaussianFit, Histogram};
use crate::ingest::{load_csv, ColumnMap, ColumnRole};
use crate::series::Series;
use crate::stats::{moment_summary, pearson, MomentSummary};
use crate::synth::{generate_bivariate_lognormal, BivariateSpec};

/// Bumped whenever the report layout changes incompatibly.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// File name of the JSON report inside the output directory.
pub const REPORT_FILE_NAME: &str = "report.json";

/// Where the analyzed series come from.
#[derive(Debug, Clone)]
pub enum InputSource {
    /// A delimited file in the ingest format.
    Csv { path: PathBuf, columns: ColumnMap },
    /// The built-in correlated log-normal generator.
    Synth(BivariateSpec),
}

/// Which of the two columns to analyze.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnSelection {
    Both,
    EmployeesOnly,
    SaleOnly,
}

/// Full configuration of one `analyze` run.
#[derive(Debug, Clone)]
pub struct AnalyzeConfig {
    pub input: InputSource,
    pub output_dir: PathBuf,
    /// Histogram bin count for the reported distributions.
    pub bins: usize,
    pub search: LambdaSearchConfig,
    pub columns: ColumnSelection,
}

impl AnalyzeConfig {
    pub fn new(input: InputSource, output_dir: impl Into<PathBuf>) -> Self {
        AnalyzeConfig {
            input,
            output_dir: output_dir.into(),
            bins: 50,
            search: LambdaSearchConfig::default(),
            columns: ColumnSelection::Both,
        }
    }
}

/// Machine-readable result of the full pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub provenance: Provenance,
    pub columns: Vec<ColumnAnalysis>,
    /// Present only when both columns were analyzed.
    pub pairwise: Option<PairwiseAnalysis>,
    /// Paths of every emitted file, relative to the output directory.
    pub artifacts: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub input: InputProvenance,
    pub config: ConfigEcho,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputProvenance {
    Csv {
        path: String,
        col_employees: String,
        col_sale: String,
        rows_used: usize,
        rows_dropped: usize,
    },
    Synth {
        spec: BivariateSpec,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub bins: usize,
    pub search: LambdaSearchConfig,
    pub columns: ColumnSelection,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnAnalysis {
    pub label: String,
    pub moments_raw: MomentSummary,
    pub optimal_lambda: OptimalLambda,
    pub moments_transformed: MomentSummary,
    pub fits: ColumnFits,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnFits {
    pub moments: GaussianFit,
    pub least_squares: GaussianFit,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairwiseAnalysis {
    pub pearson_raw: f64,
    pub pearson_transformed: f64,
}

struct ColumnArtifacts {
    histogram_raw: Histogram,
    histogram_transformed: Histogram,
    transformed: Series,
}

/// Runs the whole pipeline and writes every artifact into
/// `cfg.output_dir`: per-column raw histogram, kurtosis curve, optimal
/// lambda, transformed histogram with both Gaussian fits, pairwise scatter
/// data with Pearson values, plot scripts, and the JSON report.
pub fn run_analyze(cfg: &AnalyzeConfig) -> Result<AnalysisReport> {
    let (series_list, input) = resolve_input(cfg)?;

    let mut columns = Vec::new();
    let mut artifacts_data = Vec::new();
    for series in &series_list {
        let (analysis, extras) = analyze_column(series, cfg)?;
        columns.push(analysis);
        artifacts_data.push(extras);
    }

    let pairwise = if series_list.len() == 2 {
        Some(PairwiseAnalysis {
            pearson_raw: pearson(&series_list[0], &series_list[1])?,
            pearson_transformed: pearson(
                &artifacts_data[0].transformed,
                &artifacts_data[1].transformed,
            )?,
        })
    } else {
        None
    };

    let out = &cfg.output_dir;
    let data_dir = out.join("data");
    fs::create_dir_all(&data_dir).map_err(|e| io_error(&data_dir, e))?;

    let mut artifacts: Vec<String> = Vec::new();
    for (analysis, extras) in columns.iter().zip(&artifacts_data) {
        let names = DataFileNames::for_label(&analysis.label);
        write_histogram_data(&out.join(&names.histogram_raw), &extras.histogram_raw)?;
        artifacts.push(names.histogram_raw.clone());
        write_curve_data(&out.join(&names.curve), &analysis.optimal_lambda)?;
        artifacts.push(names.curve.clone());
        write_histogram_data(
            &out.join(&names.histogram_transformed),
            &extras.histogram_transformed,
        )?;
        artifacts.push(names.histogram_transformed.clone());
    }
    if pairwise.is_some() {
        write_scatter_data(
            &out.join(SCATTER_RAW_DATA),
            &series_list[0],
            &series_list[1],
        )?;
        artifacts.push(SCATTER_RAW_DATA.to_string());
        write_scatter_data(
            &out.join(SCATTER_TRANSFORMED_DATA),
            &artifacts_data[0].transformed,
            &artifacts_data[1].transformed,
        )?;
        artifacts.push(SCATTER_TRANSFORMED_DATA.to_string());
    }

    let mut report = AnalysisReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        provenance: Provenance {
            input,
            config: ConfigEcho {
                bins: cfg.bins,
                search: cfg.search,
                columns: cfg.columns,
            },
        },
        columns,
        pairwise,
        artifacts: Vec::new(),
    };

    for script in emit_plot_scripts(&report, out)? {
        let rel = script
            .strip_prefix(out)
            .unwrap_or(&script)
            .to_string_lossy()
            .into_owned();
        artifacts.push(rel);
    }
    report.artifacts = artifacts;

    let report_path = out.join(REPORT_FILE_NAME);
    let mut bytes =
        serde_json::to_vec_pretty(&report).expect("report contains only finite numbers");
    bytes.push(b'\n');
    fs::write(&report_path, bytes).map_err(|e| io_error(&report_path, e))?;
    Ok(report)
}

/// Generates the built-in synthetic pair and writes it as an ingest-format
/// CSV (`id,employees,sale`).
pub fn write_synth_csv(spec: &BivariateSpec, path: &Path) -> Result<()> {
    let (x, y) = generate_bivariate_lognormal(spec)?;
    let mut content = String::from("id,employees,sale\n");
    for (i, (a, b)) in x.values().iter().zip(y.values()).enumerate() {
        content.push_str(&format!("{},{a},{b}\n", i + 1));
    }
    fs::write(path, content).map_err(|e| io_error(path, e))
}

const SCATTER_RAW_DATA: &str = "data/scatter_raw.dat";
const SCATTER_TRANSFORMED_DATA: &str = "data/scatter_transformed.dat";

struct DataFileNames {
    histogram_raw: String,
    curve: String,
    histogram_transformed: String,
}

impl DataFileNames {
    fn for_label(label: &str) -> Self {
        let id = sanitize(label);
        DataFileNames {
            histogram_raw: format!("data/hist_raw_{id}.dat"),
            curve: format!("data/kurtosis_curve_{id}.dat"),
            histogram_transformed: format!("data/hist_transformed_{id}.dat"),
        }
    }
}

/// Writes one gnuplot script per figure family, returning the script paths.
///
/// A two-column report yields five scripts: grouped raw histograms, the
/// kurtosis curve, grouped transformed histograms with fit overlays, and
/// the raw/transformed scatter pair. Without a pairwise section the scatter
/// scripts are omitted. Scripts reference their data files by relative
/// path, so `gnuplot <script>` run from the output directory renders PNGs.
pub fn emit_plot_scripts(report: &AnalysisReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut written = Vec::new();
    let mut emit = |name: &str, content: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, content).map_err(|e| io_error(&path, e))?;
        written.push(path);
        Ok(())
    };

    emit("hist_raw.gp", histogram_script(report, false))?;
    emit("kurtosis_curve.gp", curve_script(report))?;
    emit("hist_transformed.gp", histogram_script(report, true))?;
    if let Some(pairwise) = &report.pairwise {
        emit(
            "scatter_raw.gp",
            scatter_script(
                report,
                "scatter_raw",
                SCATTER_RAW_DATA,
                "raw",
                pairwise.pearson_raw,
            ),
        )?;
        emit(
            "scatter_transformed.gp",
            scatter_script(
                report,
                "scatter_transformed",
                SCATTER_TRANSFORMED_DATA,
                "transformed",
                pairwise.pearson_transformed,
            ),
        )?;
    }
    Ok(written)
}

fn histogram_script(report: &AnalysisReport, transformed: bool) -> String {
    let (stem, title_tag) = if transformed {
        ("hist_transformed", "transformed")
    } else {
        ("hist_raw", "raw")
    };
    let mut s = String::new();
    s.push_str(&format!("# Column distributions ({title_tag})\n"));
    s.push_str("set terminal pngcairo size 1200,500\n");
    s.push_str(&format!("set output '{stem}.png'\n"));
    s.push_str("set style fill solid 0.5 border -1\n");
    s.push_str("set ylabel 'density'\n");
    if report.columns.len() > 1 {
        s.push_str(&format!("set multiplot layout 1,{}\n", report.columns.len()));
    }
    for column in &report.columns {
        let names = DataFileNames::for_label(&column.label);
        let data = if transformed {
            &names.histogram_transformed
        } else {
            &names.histogram_raw
        };
        s.push_str(&format!("set title '{} ({title_tag})'\n", column.label));
        s.push_str(&format!("set xlabel '{}'\n", column.label));
        if transformed {
            let id = sanitize(&column.label);
            let m = &column.fits.moments;
            let l = &column.fits.least_squares;
            s.push_str(&format!(
                "fm_{id}(x) = exp(-(x-({}))**2/(2*{}))/sqrt(2*pi*{})\n",
                m.mu, m.sigma2, m.sigma2
            ));
            s.push_str(&format!(
                "fl_{id}(x) = exp(-(x-({}))**2/(2*{}))/sqrt(2*pi*{})\n",
                l.mu, l.sigma2, l.sigma2
            ));
            s.push_str(&format!(
                "plot '{data}' using 1:3 with boxes notitle, \\\n     fm_{id}(x) with lines lw 2 title 'moment fit', \\\n     fl_{id}(x) with lines lw 2 title 'least-squares fit'\n"
            ));
        } else {
            s.push_str(&format!("plot '{data}' using 1:3 with boxes notitle\n"));
        }
    }
    if report.columns.len() > 1 {
        s.push_str("unset multiplot\n");
    }
    s
}

fn curve_script(report: &AnalysisReport) -> String {
    let mut s = String::new();
    s.push_str("# Kurtosis of the transformed data as a function of lambda\n");
    s.push_str("set terminal pngcairo size 800,600\n");
    s.push_str("set output 'kurtosis_curve.png'\n");
    s.push_str("set xlabel 'lambda'\n");
    s.push_str("set ylabel 'kurtosis'\n");
    s.push_str("set key top left\n");
    let mut plots: Vec<String> = report
        .columns
        .iter()
        .map(|c| {
            let names = DataFileNames::for_label(&c.label);
            format!(
                "'{}' using 1:2 with linespoints pt 7 ps 0.4 title '{} (lambda_c = {})'",
                names.curve, c.label, c.optimal_lambda.lambda
            )
        })
        .collect();
    plots.push("3 with lines dashtype 2 lc rgb 'gray40' title 'normal value'".to_string());
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}

fn scatter_script(
    report: &AnalysisReport,
    stem: &str,
    data: &str,
    tag: &str,
    pearson: f64,
) -> String {
    let x_label = report
        .columns
        .first()
        .map(|c| c.label.clone())
        .unwrap_or_else(|| "x".to_string());
    let y_label = report
        .columns
        .get(1)
        .map(|c| c.label.clone())
        .unwrap_or_else(|| "y".to_string());
    let mut s = String::new();
    s.push_str(&format!("# {x_label} versus {y_label} ({tag})\n"));
    s.push_str("set terminal pngcairo size 700,600\n");
    s.push_str(&format!("set output '{stem}.png'\n"));
    s.push_str(&format!("set xlabel '{x_label} ({tag})'\n"));
    s.push_str(&format!("set ylabel '{y_label} ({tag})'\n"));
    s.push_str(&format!("set title 'pearson = {pearson}'\n"));
    s.push_str(&format!(
        "plot '{data}' using 1:2 with points pt 7 ps 0.3 notitle\n"
    ));
    s
}

fn resolve_input(cfg: &AnalyzeConfig) -> Result<(Vec<Series>, InputProvenance)> {
    let (employees, sale, provenance) = match &cfg.input {
        InputSource::Csv { path, columns } => {
            let dataset = load_csv(path, columns)?;
            let provenance = InputProvenance::Csv {
                path: path.display().to_string(),
                col_employees: columns.employees.clone(),
                col_sale: columns.sale.clone(),
                rows_used: dataset.records.len(),
                rows_dropped: dataset.dropped,
            };
            (
                dataset.column(ColumnRole::Employees),
                dataset.column(ColumnRole::Sale),
                provenance,
            )
        }
        InputSource::Synth(spec) => {
            let (x, y) = generate_bivariate_lognormal(spec)?;
            (
                x.relabel(ColumnRole::Employees.label()),
                y.relabel(ColumnRole::Sale.label()),
                InputProvenance::Synth { spec: *spec },
            )
        }
    };
    let series = match cfg.columns {
        ColumnSelection::Both => vec![employees, sale],
        ColumnSelection::EmployeesOnly => vec![employees],
        ColumnSelection::SaleOnly => vec![sale],
    };
    Ok((series, provenance))
}

fn analyze_column(
    series: &Series,
    cfg: &AnalyzeConfig,
) -> Result<(ColumnAnalysis, ColumnArtifacts)> {
    let moments_raw = moment_summary(series)?;
    let optimal = optimize_lambda(series, &cfg.search)?;
    let params = BoxCoxParams {
        lambda: optimal.lambda,
        shift: cfg.search.shift,
    };
    let transformed = transform_series(series, &params)?;
    let moments_transformed = moment_summary(&transformed)?;
    let histogram_raw = build_histogram(series, cfg.bins)?;
    let histogram_transformed = build_histogram(&transformed, cfg.bins)?;
    let fit_moments = fit_gaussian_moments(&transformed, &histogram_transformed)?;
    let fit_ls = fit_gaussian_least_squares(&histogram_transformed, &fit_moments)?;
    Ok((
        ColumnAnalysis {
            label: series.label().to_string(),
            moments_raw,
            optimal_lambda: optimal,
            moments_transformed,
            fits: ColumnFits {
                moments: fit_moments,
                least_squares: fit_ls,
            },
        },
        ColumnArtifacts {
            histogram_raw,
            histogram_transformed,
            transformed,
        },
    ))
}

fn write_histogram_data(path: &Path, hist: &Histogram) -> Result<()> {
    let mut content = String::from("# bin_center count density\n");
    let centers = hist.bin_centers();
    for ((center, count), density) in centers.iter().zip(&hist.counts).zip(&hist.densities) {
        content.push_str(&format!("{center} {count} {density}\n"));
    }
    fs::write(path, content).map_err(|e| io_error(path, e))
}

fn write_curve_data(path: &Path, optimal: &OptimalLambda) -> Result<()> {
    let mut content = String::from("# lambda kurtosis objective\n");
    for point in &optimal.trace {
        content.push_str(&format!(
            "{} {} {}\n",
            point.lambda, point.kurtosis, point.objective
        ));
    }
    fs::write(path, content).map_err(|e| io_error(path, e))
}

fn write_scatter_data(path: &Path, x: &Series, y: &Series) -> Result<()> {
    let mut file = std::io::BufWriter::new(
        fs::File::create(path).map_err(|e| io_error(path, e))?,
    );
    let write = |file: &mut std::io::BufWriter<fs::File>| -> std::io::Result<()> {
        writeln!(file, "# {} {}", x.label(), y.label())?;
        for (a, b) in x.values().iter().zip(y.values()) {
            writeln!(file, "{a} {b}")?;
        }
        file.flush()
    };
    write(&mut file).map_err(|e| io_error(path, e))
}

fn sanitize(label: &str) -> String {
    let mut id: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    if !id.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        id.insert(0, 'c');
    }
    id
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanitize_makes_safe_identifiers() {
        assert_eq!(sanitize("employees"), "employees");
        assert_eq!(sanitize("Net Sales (JPY)"), "net_sales__jpy_");
        assert_eq!(sanitize("2024 revenue"), "c2024_revenue");
    }
}
