//! Thin command-line front end over the library pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kurtcox::boxcox::{kurtosis_curve, transform_series, BoxCoxParams, LambdaSearchConfig, Objective};
use kurtcox::ingest::{load_csv, ColumnMap, ColumnRole};
use kurtcox::report::{
    run_analyze, write_synth_csv, AnalyzeConfig, ColumnSelection, InputSource, REPORT_FILE_NAME,
};
use kurtcox::series::Series;
use kurtcox::synth::{
    BivariateSpec, LogNormalSpec, DEFAULT_EMPLOYEES_MU, DEFAULT_EMPLOYEES_SIGMA2, DEFAULT_RHO,
    DEFAULT_SALE_MU, DEFAULT_SALE_SIGMA2,
};

#[derive(Parser)]
#[command(
    name = "kurtcox",
    version,
    about = "Box-Cox normalization with kurtosis-driven lambda selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write a JSON report plus plot scripts.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic CSV in the ingest format.
    Synth(SynthArgs),
    /// Apply a fixed lambda to one column and print the transformed values.
    Transform(TransformArgs),
    /// Print the kurtosis-vs-lambda curve for one column.
    Curve(CurveArgs),
}

#[derive(Args)]
struct CsvFlags {
    /// Input CSV file; without it a synthetic sample is analyzed.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Header of the employees column.
    #[arg(long, default_value = "employees")]
    col_employees: String,
    /// Header of the sale column.
    #[arg(long, default_value = "sale")]
    col_sale: String,
}

#[derive(Args)]
struct SearchFlags {
    /// Lower end of the lambda search range.
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    lambda_min: f64,
    /// Upper end of the lambda search range.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    lambda_max: f64,
    /// Number of grid evaluations across the range.
    #[arg(long, default_value_t = 81)]
    grid_steps: usize,
    /// Width at which golden-section refinement stops.
    #[arg(long, default_value_t = 1e-4)]
    tolerance: f64,
    /// Objective the search minimizes.
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Kurtosis)]
    objective: ObjectiveArg,
    /// Constant added to every value before transforming.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    shift: f64,
}

impl SearchFlags {
    fn to_config(&self) -> LambdaSearchConfig {
        LambdaSearchConfig {
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            grid_steps: self.grid_steps,
            refine_tolerance: self.tolerance,
            objective: match self.objective {
                ObjectiveArg::Kurtosis => Objective::KurtosisToNormal,
                ObjectiveArg::Skewness => Objective::AbsSkewness,
            },
            shift: self.shift,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Kurtosis,
    Skewness,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColumnArg {
    Employees,
    Sale,
}

impl ColumnArg {
    fn role(self) -> ColumnRole {
        match self {
            ColumnArg::Employees => ColumnRole::Employees,
            ColumnArg::Sale => ColumnRole::Sale,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    csv: CsvFlags,
    /// Output directory for the report and plot artifacts.
    #[arg(long, env = "KURTCOX_OUTPUT", default_value = "kurtcox-out")]
    output: PathBuf,
    /// Histogram bins for the reported distributions.
    #[arg(long, default_value_t = 50)]
    bins: usize,
    #[command(flatten)]
    search: SearchFlags,
    /// Seed of the synthetic sample (when no --input is given).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Size of the synthetic sample (when no --input is given).
    #[arg(long, default_value_t = 50_000)]
    n: usize,
    /// Restrict the analysis to a single column.
    #[arg(long, value_enum)]
    only: Option<ColumnArg>,
}

#[derive(Args)]
struct SynthArgs {
    /// Path of the CSV file to write.
    #[arg(long)]
    output: PathBuf,
    /// Number of rows.
    #[arg(long, default_value_t = 3206)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Mean of the underlying normal for the employees column.
    #[arg(long, default_value_t = DEFAULT_EMPLOYEES_MU, allow_negative_numbers = true)]
    mu_employees: f64,
    /// Variance of the underlying normal for the employees column.
    #[arg(long, default_value_t = DEFAULT_EMPLOYEES_SIGMA2)]
    var_employees: f64,
    /// Mean of the underlying normal for the sale column.
    #[arg(long, default_value_t = DEFAULT_SALE_MU, allow_negative_numbers = true)]
    mu_sale: f64,
    /// Variance of the underlying normal for the sale column.
    #[arg(long, default_value_t = DEFAULT_SALE_SIGMA2)]
    var_sale: f64,
    /// Correlation of the underlying normals.
    #[arg(long, default_value_t = DEFAULT_RHO)]
    rho: f64,
}

impl SynthArgs {
    fn spec(&self) -> BivariateSpec {
        BivariateSpec {
            spec_x: LogNormalSpec {
                mu: self.mu_employees,
                sigma2: self.var_employees,
                n: self.n,
                seed: self.seed,
            },
            spec_y: LogNormalSpec {
                mu: self.mu_sale,
                sigma2: self.var_sale,
                n: self.n,
                seed: self.seed,
            },
            rho: self.rho,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    /// Input CSV file.
    #[arg(long)]
    input: PathBuf,
    /// Power parameter to apply.
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
    /// Constant added to every value before transforming.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    shift: f64,
    /// Which column to transform.
    #[arg(long, value_enum, default_value_t = ColumnArg::Employees)]
    column: ColumnArg,
    #[arg(long, default_value = "employees")]
    col_employees: String,
    #[arg(long, default_value = "sale")]
    col_sale: String,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    csv: CsvFlags,
    #[command(flatten)]
    search: SearchFlags,
    /// Which column to evaluate.
    #[arg(long, value_enum, default_value_t = ColumnArg::Employees)]
    column: ColumnArg,
    /// Seed of the synthetic sample (when no --input is given).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Size of the synthetic sample (when no --input is given).
    #[arg(long, default_value_t = 50_000)]
    n: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let line = serde_json::json!({
                "error": err.to_string(),
                "kind": err.kind(),
            });
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> kurtcox::Result<()> {
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Synth(args) => synth(args),
        Command::Transform(args) => transform(args),
        Command::Curve(args) => curve(args),
    }
}

fn analyze(args: AnalyzeArgs) -> kurtcox::Result<()> {
    let input = match &args.csv.input {
        Some(path) => InputSource::Csv {
            path: path.clone(),
            columns: ColumnMap {
                employees: args.csv.col_employees.clone(),
                sale: args.csv.col_sale.clone(),
            },
        },
        None => InputSource::Synth(BivariateSpec::demo_defaults(args.n, args.seed)),
    };
    let cfg = AnalyzeConfig {
        input,
        output_dir: args.output.clone(),
        bins: args.bins,
        search: args.search.to_config(),
        columns: match args.only {
            None => ColumnSelection::Both,
            Some(ColumnArg::Employees) => ColumnSelection::EmployeesOnly,
            Some(ColumnArg::Sale) => ColumnSelection::SaleOnly,
        },
    };
    let report = run_analyze(&cfg)?;
    if let kurtcox::report::InputProvenance::Csv { rows_dropped, .. } = &report.provenance.input {
        if *rows_dropped > 0 {
            eprintln!("warning: dropped {rows_dropped} invalid rows during load");
        }
    }
    for column in &report.columns {
        let optimal = &column.optimal_lambda;
        println!(
            "{}: lambda_c = {}, kurtosis = {}{}",
            column.label,
            optimal.lambda,
            optimal.kurtosis_at_optimum,
            if optimal.at_boundary {
                " (warning: optimum on search boundary)"
            } else {
                ""
            }
        );
    }
    if let Some(pairwise) = &report.pairwise {
        println!(
            "pearson: raw = {}, transformed = {}",
            pairwise.pearson_raw, pairwise.pearson_transformed
        );
    }
    println!(
        "report written to {}",
        args.output.join(REPORT_FILE_NAME).display()
    );
    Ok(())
}

fn synth(args: SynthArgs) -> kurtcox::Result<()> {
    let spec = args.spec();
    write_synth_csv(&spec, &args.output)?;
    println!(
        "wrote {} rows to {} (seed {}, rho {}, employees ~ exp N({}, {}), sale ~ exp N({}, {}))",
        args.n,
        args.output.display(),
        args.seed,
        args.rho,
        args.mu_employees,
        args.var_employees,
        args.mu_sale,
        args.var_sale
    );
    Ok(())
}

fn transform(args: TransformArgs) -> kurtcox::Result<()> {
    let series = load_column(
        &args.input,
        &args.col_employees,
        &args.col_sale,
        args.column,
    )?;
    let params = BoxCoxParams::with_shift(args.lambda, args.shift)?;
    let transformed = transform_series(&series, &params)?;
    let mut out = String::new();
    for v in transformed.values() {
        out.push_str(&format!("{v}\n"));
    }
    print!("{out}");
    Ok(())
}

fn curve(args: CurveArgs) -> kurtcox::Result<()> {
    let series = match &args.csv.input {
        Some(path) => load_column(path, &args.csv.col_employees, &args.csv.col_sale, args.column)?,
        None => {
            let spec = BivariateSpec::demo_defaults(args.n, args.seed);
            let (x, y) = kurtcox::synth::generate_bivariate_lognormal(&spec)?;
            match args.column {
                ColumnArg::Employees => x.relabel(ColumnRole::Employees.label()),
                ColumnArg::Sale => y.relabel(ColumnRole::Sale.label()),
            }
        }
    };
    let points = kurtosis_curve(&series, &args.search.to_config())?;
    let mut out = String::from("# lambda kurtosis\n");
    for (lambda, kurtosis) in points {
        out.push_str(&format!("{lambda} {kurtosis}\n"));
    }
    print!("{out}");
    Ok(())
}

fn load_column(
    path: &std::path::Path,
    col_employees: &str,
    col_sale: &str,
    column: ColumnArg,
) -> kurtcox::Result<Series> {
    let map = ColumnMap {
        employees: col_employees.to_string(),
        sale: col_sale.to_string(),
    };
    let dataset = load_csv(path, &map)?;
    if dataset.dropped > 0 {
        eprintln!(
            "warning: dropped {} invalid rows during load",
            dataset.dropped
        );
    }
    Ok(dataset.column(column.role()))
}
