//! The `energy-forecast` command line: `forecast`, `benchmark`, `resample`
//! and `decompose`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error, 4 model
//! error, 5 every benchmark cell failed.

mod config;

pub use config::{parse_config, CONFIG_ENV};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, ErrorKind, Result};
use crate::evaluation::{
    self, Benchmark, Dataset, EvalSpec, Hyperparameters, ModelKind, ModelSpec, Preprocess, SplitSpec,
};
use crate::ingest::{self, DatasetSchema, TimestampFormat, WeatherSchema};
use crate::plot;
use crate::regressors::{ForecastMode, GpParams, KnnParams, MlpParams, SvrParams};
use crate::series::{merge, resample, AggregateMode, Column, MultiSeries, TimeSeries, ENERGY};
use crate::transform::decompose;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_MODEL: i32 = 4;
pub const EXIT_ALL_FAILED: i32 = 5;

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Config => EXIT_CONFIG,
        ErrorKind::Data => EXIT_DATA,
        ErrorKind::Model => EXIT_MODEL,
    }
}

/// Parse `<integer><m|h|d>` (or `daily`) into seconds.
pub fn parse_interval(s: &str) -> Result<i64> {
    let s = s.trim();
    if s == "daily" {
        return Ok(86_400);
    }
    let (num, unit) = s.split_at(s.len().saturating_sub(1));
    let scale = match unit {
        "m" => 60,
        "h" => 3_600,
        "d" => 86_400,
        _ => return Err(Error::Config(format!("interval `{s}` must look like 15m, 1h, 1d or daily"))),
    };
    match num.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n * scale),
        _ => Err(Error::Config(format!("interval `{s}` needs a positive integer count"))),
    }
}

fn interval_arg(s: &str) -> std::result::Result<i64, String> {
    parse_interval(s).map_err(|e| e.to_string())
}

fn model_arg(s: &str) -> std::result::Result<ModelKind, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

fn mode_arg(s: &str) -> std::result::Result<ForecastMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn split_arg(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    SplitSpec::new(v).map(|x| x.train_fraction).map_err(|e| e.to_string())
}

fn aggregate_arg(s: &str) -> std::result::Result<AggregateMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Parser, Debug, Serialize)]
#[command(name = "energy-forecast", version, about = "Household electricity forecasting and benchmarking")]
pub struct Cli {
    /// `key = value` file of default flags (falls back to $ENERGY_FORECAST_CONFIG)
    #[arg(long, global = true, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Fit one model and forecast (or backtest) a horizon
    Forecast(ForecastArgs),
    /// Sweep models × datasets × intervals × splits and rank the models
    Benchmark(BenchmarkArgs),
    /// Aggregate a series to a coarser interval
    Resample(ResampleArgs),
    /// Classical additive decomposition into trend, seasonal and residual
    Decompose(DecomposeArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SchemaArgs {
    /// Timestamp column (inferred when omitted)
    #[arg(long)]
    pub timestamp_column: Option<String>,
    /// Value column (inferred when omitted)
    #[arg(long)]
    pub value_column: Option<String>,
    /// `iso8601`, `epoch`, or a strftime pattern [default: iso8601]
    #[arg(long)]
    pub timestamp_format: Option<String>,
    /// Field delimiter [default: `,` or detected]
    #[arg(long)]
    pub delimiter: Option<char>,
    /// The file has no header row; columns are named by zero-based index
    #[arg(long)]
    pub no_header: bool,
    /// Offset of naive timestamps from UTC, in seconds
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub utc_offset: i32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WeatherArgs {
    /// Weather file: OpenWeatherMap JSON (`.json`) or CSV with dt,temp,humidity
    #[arg(long)]
    pub weather: Option<PathBuf>,
    /// Carry weather forward at most this many intervals
    #[arg(long, default_value_t = crate::series::DEFAULT_MAX_FILL)]
    pub max_fill: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    /// Lag order for regressors and VAR; AR order for ARIMA
    #[arg(long, default_value_t = 24)]
    pub p: usize,
    /// ARIMA differencing order (at most 2)
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// ARIMA moving-average order
    #[arg(long, default_value_t = 0)]
    pub q: usize,
    /// `one-step` (true history) or `recursive`
    #[arg(long, default_value = "one-step", value_parser = mode_arg)]
    pub mode: ForecastMode,
    /// `lags`, `difference` or `deseasonalize` (needs --period)
    #[arg(long, default_value = "lags")]
    pub preprocess: String,
    /// Seasonal period in observations for `deseasonalize`
    #[arg(long)]
    pub period: Option<usize>,
    /// Use weather columns as exogenous regressor features
    #[arg(long)]
    pub exog: bool,
    /// Neighbours for knn
    #[arg(long, default_value_t = 3)]
    pub knn_k: usize,
    /// GP signal variance σ_f²
    #[arg(long, default_value_t = 1.0)]
    pub gp_signal_variance: f64,
    /// GP length scale ℓ
    #[arg(long, default_value_t = 1.0)]
    pub gp_length_scale: f64,
    /// GP noise variance σ_n²
    #[arg(long, default_value_t = 0.01)]
    pub gp_noise_variance: f64,
    /// SVR box constraint C
    #[arg(long, default_value_t = 1.0)]
    pub svr_c: f64,
    /// SVR tube half-width ε (standardized units)
    #[arg(long, default_value_t = 0.1)]
    pub svr_epsilon: f64,
    /// SVR kernel width γ [default: 1 / (features · var(X))]
    #[arg(long)]
    pub svr_gamma: Option<f64>,
    /// SVR KKT tolerance
    #[arg(long, default_value_t = 1e-3)]
    pub svr_tol: f64,
    /// MLP hidden units [default: ceil((p + 1) / 2)]
    #[arg(long)]
    pub mlp_hidden: Option<usize>,
    /// MLP learning rate
    #[arg(long, default_value_t = 0.3)]
    pub mlp_learning_rate: f64,
    /// MLP momentum
    #[arg(long, default_value_t = 0.2)]
    pub mlp_momentum: f64,
    /// MLP training epochs
    #[arg(long, default_value_t = 500)]
    pub mlp_epochs: usize,
    /// Seed for MLP weight initialization
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ModelArgs {
    fn validate(&self) -> Result<()> {
        if self.d > 2 {
            return Err(Error::Config(format!("--d {} exceeds 2; difference the data explicitly instead", self.d)));
        }
        if self.p == 0 {
            return Err(Error::Config("--p must be at least 1".into()));
        }
        self.preprocess()?;
        Ok(())
    }

    fn preprocess(&self) -> Result<Preprocess> {
        match (self.preprocess.as_str(), self.period) {
            ("lags", _) => Ok(Preprocess::Lags),
            ("difference", _) => Ok(Preprocess::Difference),
            ("deseasonalize", Some(m)) if m >= 2 => Ok(Preprocess::Deseasonalize { period: m }),
            ("deseasonalize", _) => Err(Error::Config("deseasonalize needs --period of at least 2".into())),
            (other, _) => Err(Error::Config(format!("unknown preprocessing `{other}`"))),
        }
    }

    fn hyper(&self) -> Hyperparameters {
        Hyperparameters {
            knn: KnnParams { k: self.knn_k },
            gp: GpParams {
                signal_variance: self.gp_signal_variance,
                length_scale: self.gp_length_scale,
                noise_variance: self.gp_noise_variance,
                ..GpParams::default()
            },
            svr: SvrParams { c: self.svr_c, epsilon: self.svr_epsilon, gamma: self.svr_gamma, tol: self.svr_tol, ..SvrParams::default() },
            mlp: MlpParams {
                hidden: self.mlp_hidden,
                learning_rate: self.mlp_learning_rate,
                momentum: self.mlp_momentum,
                epochs: self.mlp_epochs,
                seed: self.seed,
                ..MlpParams::default()
            },
            d: self.d,
            q: self.q,
        }
    }

    fn spec(&self, horizon: Option<usize>) -> Result<EvalSpec> {
        Ok(EvalSpec { lag_order: self.p, horizon, mode: self.mode, preprocess: self.preprocess()?, use_exog: self.exog })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ForecastArgs {
    /// Energy CSV
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub schema: SchemaArgs,
    #[command(flatten)]
    pub weather: WeatherArgs,
    /// ols, knn, gp, svr, mlp, arima or var
    #[arg(long, value_parser = model_arg)]
    pub model: ModelKind,
    #[command(flatten)]
    pub model_args: ModelArgs,
    /// Steps to forecast
    #[arg(long, default_value_t = 24)]
    pub horizon: usize,
    /// Resample to this interval first (e.g. 1h, 3h, daily)
    #[arg(long, value_parser = interval_arg)]
    pub interval: Option<i64>,
    /// Hold out the last `horizon` observations and score against them
    #[arg(long)]
    pub backtest: bool,
    /// Forecast CSV [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// SVG overlay of actual (red) and predicted (blue) values
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct BenchmarkArgs {
    /// Energy CSV; repeat for several datasets
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[command(flatten)]
    pub schema: SchemaArgs,
    #[command(flatten)]
    pub weather: WeatherArgs,
    /// Comma-separated models
    #[arg(long, value_delimiter = ',', default_value = "ols,knn,gp,svr,mlp,arima,var", value_parser = model_arg)]
    pub models: Vec<ModelKind>,
    /// Comma-separated training fractions
    #[arg(long, value_delimiter = ',', default_value = "0.6,0.7,0.8", value_parser = split_arg)]
    pub splits: Vec<f64>,
    /// Comma-separated intervals to resample to [default: native]
    #[arg(long, value_delimiter = ',', value_parser = interval_arg)]
    pub intervals: Vec<i64>,
    /// Steps to score per split [default: the whole test suffix]
    #[arg(long)]
    pub horizon: Option<usize>,
    #[command(flatten)]
    pub model_args: ModelArgs,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// JSON report path
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Text report path [default: stdout]
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Include wall-clock timings (makes reports non-reproducible)
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ResampleArgs {
    /// Energy CSV
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub schema: SchemaArgs,
    /// Target interval (e.g. 1h, 3h, 6h, 12h, daily)
    #[arg(long, value_parser = interval_arg)]
    pub interval: i64,
    /// `sum` or `mean`
    #[arg(long, default_value = "sum", value_parser = aggregate_arg)]
    pub mode: AggregateMode,
    /// Canonical CSV [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DecomposeArgs {
    /// Energy CSV
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub schema: SchemaArgs,
    /// Seasonal period in observations (e.g. 24 for hourly data)
    #[arg(long)]
    pub period: usize,
    /// Resample to this interval first
    #[arg(long, value_parser = interval_arg)]
    pub interval: Option<i64>,
    /// CSV with timestamp,value,trend,seasonal,residual [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Four-panel SVG of the components
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

/// Run the command line and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if args.is_empty() {
        args.push("energy-forecast".into());
    }
    if let Err(e) = apply_config(&mut args) {
        eprintln!("error: {e}");
        return exit_code(e.kind());
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(e.kind())
        }
    }
}

fn apply_config(args: &mut Vec<OsString>) -> Result<()> {
    let Some(path) = config::take_config_path(args)? else {
        return Ok(());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let entries = parse_config(&text, &path)?;
    let sub_name = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).find(|a| !a.starts_with('-'));
    let root = Cli::command();
    let Some(sub) = sub_name.as_deref().and_then(|n| root.find_subcommand(n)) else {
        return Ok(());
    };
    for (k, _) in &entries {
        if !sub.get_arguments().any(|a| a.get_long() == Some(k.as_str())) || k == "config" {
            return Err(Error::Config(format!("{}: unknown key `{k}` for `{}`", path.display(), sub.get_name())));
        }
    }
    let is_switch = |k: &str| {
        sub.get_arguments().find(|a| a.get_long() == Some(k)).is_some_and(|a| !a.get_action().takes_values())
    };
    config::splice(args, &entries, is_switch)
}

fn execute(cli: &Cli) -> Result<i32> {
    let resolved = serde_json::to_value(&cli.command)?;
    match &cli.command {
        Command::Forecast(a) => cmd_forecast(a),
        Command::Benchmark(a) => cmd_benchmark(a, &resolved),
        Command::Resample(a) => cmd_resample(a),
        Command::Decompose(a) => cmd_decompose(a),
    }
}

fn resolve_schema(path: &Path, s: &SchemaArgs) -> Result<DatasetSchema> {
    let mut schema = match (&s.timestamp_column, &s.value_column) {
        (Some(t), Some(v)) => DatasetSchema::new(t.clone(), v.clone()),
        _ if s.no_header => {
            return Err(Error::Config("--no-header needs --timestamp-column and --value-column".into()))
        }
        _ => {
            let mut inferred = ingest::infer_schema(path)?;
            if let Some(t) = &s.timestamp_column {
                inferred.timestamp_column = t.clone();
            }
            if let Some(v) = &s.value_column {
                inferred.value_column = v.clone();
            }
            inferred
        }
    };
    if let Some(f) = &s.timestamp_format {
        schema.timestamp_format = match f.as_str() {
            "iso8601" | "iso" => TimestampFormat::Iso8601,
            "epoch" | "epoch_seconds" => TimestampFormat::EpochSeconds,
            custom => TimestampFormat::Custom(custom.to_string()),
        };
    }
    if let Some(d) = s.delimiter {
        schema.delimiter = u8::try_from(d).map_err(|_| Error::Config(format!("delimiter `{d}` is not ASCII")))?;
    }
    schema.has_header = !s.no_header;
    schema.utc_offset = s.utc_offset;
    schema.validate()?;
    Ok(schema)
}

fn load_series(path: &Path, s: &SchemaArgs) -> Result<TimeSeries> {
    let schema = resolve_schema(path, s)?;
    ingest::read_energy_csv(path, &schema)
}

fn dataset_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_dataset(path: &Path, s: &SchemaArgs, w: &WeatherArgs, interval: Option<i64>) -> Result<Dataset> {
    let energy = load_series(path, s)?;
    let series = match &w.weather {
        None => MultiSeries::from_series(ENERGY, &energy),
        Some(wp) => {
            let records = if wp.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
                ingest::read_weather_json(wp)?
            } else {
                ingest::read_weather(wp, &WeatherSchema::open_weather_map())?
            };
            merge(&energy, &records, w.max_fill)?
        }
    };
    let ds = Dataset::new(dataset_name(path), series, ENERGY)?;
    match interval {
        Some(iv) => ds.resample(iv),
        None => Ok(ds),
    }
}

fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => ingest::write_file(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn cmd_forecast(a: &ForecastArgs) -> Result<i32> {
    a.model_args.validate()?;
    if a.horizon == 0 {
        return Err(Error::Config("--horizon must be at least 1".into()));
    }
    let model = ModelSpec::with_hyper(a.model, a.model_args.hyper());
    let ds = load_dataset(&a.input, &a.schema, &a.weather, a.interval)?;
    let n = ds.series.len();
    let actual_all = ds.series.column(ENERGY)?.to_vec();

    let (csv, plot_x, plot_actual, plot_pred) = if a.backtest {
        if a.horizon >= n {
            return Err(Error::InsufficientTest(format!("horizon {} leaves no training data in {n}", a.horizon)));
        }
        let spec = a.model_args.spec(Some(a.horizon))?;
        let e = evaluation::evaluate_prefix(&model, 0, &ds, n - a.horizon, &spec)?;
        eprintln!(
            "scored={} rmse={} mae={} rae={}",
            e.record.scored,
            e.record.rmse.map_or("undefined".into(), |v| v.to_string()),
            e.record.mae.map_or("undefined".into(), |v| v.to_string()),
            e.record.rae.map_or("undefined".into(), |v| v.to_string()),
        );
        let mut csv = String::from("timestamp,actual,predicted\n");
        for (k, (act, pred)) in e.actual.iter().zip(&e.predicted).enumerate() {
            csv.push_str(&format!(
                "{},{},{}\n",
                ingest::format_timestamp(ds.series.timestamp(e.origin + k)),
                ingest::format_value(*act),
                ingest::format_value(*pred)
            ));
        }
        let x: Vec<f64> = (0..a.horizon).map(|k| (e.origin + k) as f64).collect();
        (csv, x, e.actual, e.predicted)
    } else {
        let spec = a.model_args.spec(None)?;
        let pred = evaluation::forecast_ahead(&model, &ds, &spec, a.horizon)?;
        let mut csv = String::from("timestamp,predicted\n");
        for (k, v) in pred.iter().enumerate() {
            csv.push_str(&format!(
                "{},{}\n",
                ingest::format_timestamp(ds.series.start() + (n + k) as i64 * ds.series.interval()),
                ingest::format_value(*v)
            ));
        }
        let shown = n.min(4 * a.horizon);
        let x: Vec<f64> = (n - shown..n + a.horizon).map(|i| i as f64).collect();
        let mut act = actual_all[n - shown..].to_vec();
        act.extend(std::iter::repeat_n(f64::NAN, a.horizon));
        let mut p = vec![f64::NAN; shown];
        p.extend(&pred);
        (csv, x, act, p)
    };

    emit(a.output.as_deref(), &csv)?;
    if let Some(path) = &a.plot {
        let title = format!("{} forecast, {}", a.model, dataset_name(&a.input));
        ingest::write_file(path, &plot::forecast_svg(&title, &plot_x, &plot_actual, &plot_pred))?;
    }
    Ok(EXIT_OK)
}

fn cmd_benchmark(a: &BenchmarkArgs, resolved: &serde_json::Value) -> Result<i32> {
    a.model_args.validate()?;
    if a.models.is_empty() {
        return Err(Error::Config("--models is empty".into()));
    }
    if a.horizon == Some(0) {
        return Err(Error::Config("--horizon must be at least 1".into()));
    }
    if a.jobs == 0 {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let mut datasets: Vec<Dataset> = Vec::new();
    for path in &a.input {
        let mut ds = load_dataset(path, &a.schema, &a.weather, None)?;
        let base = ds.name.clone();
        let mut k = 2;
        while datasets.iter().any(|d| d.name == ds.name) {
            ds.name = format!("{base}#{k}");
            k += 1;
        }
        datasets.push(ds);
    }
    let hyper = a.model_args.hyper();
    let plan = Benchmark {
        models: a.models.iter().map(|k| ModelSpec::with_hyper(*k, hyper.clone())).collect(),
        datasets,
        splits: a.splits.clone(),
        intervals: if a.intervals.is_empty() { vec![None] } else { a.intervals.iter().map(|v| Some(*v)).collect() },
        spec: a.model_args.spec(a.horizon)?,
        jobs: a.jobs,
    };
    let report = plan.run()?;
    for r in report.records.iter().filter(|r| !r.ok()) {
        eprintln!(
            "warning: {} on {} (split {}, interval {}s) failed: {}",
            r.model,
            r.dataset,
            r.split,
            r.interval,
            r.error.as_deref().unwrap_or("")
        );
    }
    if let Some(p) = &a.report {
        ingest::write_file(p, &report.to_json(resolved, a.timings)?)?;
    }
    emit(a.table.as_deref(), &report.to_text(a.timings))?;
    Ok(if report.all_failed() { EXIT_ALL_FAILED } else { EXIT_OK })
}

fn cmd_resample(a: &ResampleArgs) -> Result<i32> {
    let s = load_series(&a.input, &a.schema)?;
    let out = resample(&s, a.interval, a.mode)?;
    emit(a.output.as_deref(), &ingest::canonical_csv(&out))?;
    Ok(EXIT_OK)
}

fn cmd_decompose(a: &DecomposeArgs) -> Result<i32> {
    if a.period < 2 {
        return Err(Error::Config("--period must be at least 2".into()));
    }
    let mut s = load_series(&a.input, &a.schema)?;
    if let Some(iv) = a.interval {
        s = resample(&s, iv, AggregateMode::Sum)?;
    }
    let dec = decompose(&s, a.period)?;
    let table = MultiSeries::new(
        s.start(),
        s.interval(),
        vec![
            Column { name: "value".into(), values: s.values().to_vec() },
            Column { name: "trend".into(), values: dec.trend.clone() },
            Column { name: "seasonal".into(), values: dec.seasonal.clone() },
            Column { name: "residual".into(), values: dec.residual.clone() },
        ],
    )?;
    emit(a.output.as_deref(), &ingest::table_csv(&table))?;
    if let Some(path) = &a.plot {
        let x: Vec<f64> = (0..s.len()).map(|i| i as f64).collect();
        let title = format!("decomposition (period {}), {}", a.period, dataset_name(&a.input));
        ingest::write_file(
            path,
            &plot::decomposition_svg(&title, &x, s.values(), &dec.trend, &dec.seasonal, &dec.residual),
        )?;
    }
    Ok(EXIT_OK)
}
