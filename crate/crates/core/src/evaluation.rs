//! Chronological train/test evaluation, error metrics and benchmark sweeps.
//!
//! A split keeps the first `round(train_fraction · n)` observations for
//! fitting and forecasts the rest. Everything learned from data (scalers,
//! seasonal indices, model parameters) is computed from the training prefix
//! only; metrics are reported in the original units of the series.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arima::{self, ArimaModel, ArimaOrder};
use crate::error::{Error, Result};
use crate::regressors::{
    ForecastMode, GpParams, KnnParams, MlpParams, Regressor, RegressorSpec, SvrParams,
};
use crate::series::{is_missing, resample_multi, AggregateMode, MultiSeries, MISSING};
use crate::transform::{decompose_values, lag_embed, lag_features, Decomposition};
use crate::var::{self, VarModel};

/// Root mean squared, mean absolute and relative absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub rmse: f64,
    pub mae: f64,
    /// `Σ|a − p| / Σ|a − mean(train)|`; `None` when the denominator is zero.
    pub rae: Option<f64>,
}

pub fn metrics(actual: &[f64], predicted: &[f64], train_targets: &[f64]) -> Result<Metrics> {
    if actual.len() != predicted.len() {
        return Err(Error::LengthMismatch { left: actual.len(), right: predicted.len() });
    }
    if actual.is_empty() || train_targets.is_empty() {
        return Err(Error::InsufficientTest("metrics need at least one value".into()));
    }
    let n = actual.len() as f64;
    let baseline = train_targets.iter().sum::<f64>() / train_targets.len() as f64;
    let mut abs = 0.0;
    let mut sq = 0.0;
    let mut base_abs = 0.0;
    for (a, p) in actual.iter().zip(predicted) {
        let e = a - p;
        abs += e.abs();
        sq += e * e;
        base_abs += (a - baseline).abs();
    }
    Ok(Metrics {
        rmse: (sq / n).sqrt(),
        mae: abs / n,
        rae: (base_abs > 0.0).then(|| abs / base_abs),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::Config(format!(
                "train fraction must lie in (0, 1), got {train_fraction}"
            )));
        }
        Ok(Self { train_fraction })
    }

    /// Length of the training prefix for a series of `n` observations.
    pub fn train_len(&self, n: usize) -> Result<usize> {
        let cut = (self.train_fraction * n as f64).round() as usize;
        if cut == 0 || cut >= n {
            return Err(Error::InsufficientTest(format!(
                "split {} leaves an empty partition of {n} observations",
                self.train_fraction
            )));
        }
        Ok(cut)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Training-mean baseline.
    Mean,
    Ols,
    Knn,
    Gp,
    Svr,
    Mlp,
    Arima,
    Var,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Ols,
        ModelKind::Knn,
        ModelKind::Gp,
        ModelKind::Svr,
        ModelKind::Mlp,
        ModelKind::Arima,
        ModelKind::Var,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Mean => "mean",
            ModelKind::Ols => "ols",
            ModelKind::Knn => "knn",
            ModelKind::Gp => "gp",
            ModelKind::Svr => "svr",
            ModelKind::Mlp => "mlp",
            ModelKind::Arima => "arima",
            ModelKind::Var => "var",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mean" => ModelKind::Mean,
            "ols" => ModelKind::Ols,
            "knn" => ModelKind::Knn,
            "gp" => ModelKind::Gp,
            "svr" => ModelKind::Svr,
            "mlp" => ModelKind::Mlp,
            "arima" => ModelKind::Arima,
            "var" => ModelKind::Var,
            other => return Err(Error::Config(format!("unknown model `{other}`"))),
        })
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Every tunable knob, with the documented defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Hyperparameters {
    pub knn: KnnParams,
    pub gp: GpParams,
    pub svr: SvrParams,
    pub mlp: MlpParams,
    /// ARIMA differencing order.
    pub d: usize,
    /// ARIMA moving-average order.
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub hyper: Hyperparameters,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self { kind, hyper: Hyperparameters::default() }
    }

    pub fn with_hyper(kind: ModelKind, hyper: Hyperparameters) -> Self {
        Self { kind, hyper }
    }

    fn regressor(&self) -> Option<RegressorSpec> {
        Some(match self.kind {
            ModelKind::Ols => RegressorSpec::Ols,
            ModelKind::Knn => RegressorSpec::Knn(self.hyper.knn.clone()),
            ModelKind::Gp => RegressorSpec::Gp(self.hyper.gp.clone()),
            ModelKind::Svr => RegressorSpec::Svr(self.hyper.svr.clone()),
            ModelKind::Mlp => RegressorSpec::Mlp(self.hyper.mlp.clone()),
            _ => return None,
        })
    }
}

/// Preprocessing applied to the series before modelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Preprocess {
    /// Lagged values as-is.
    Lags,
    /// First backward difference of every column.
    Difference,
    /// Subtract train-fitted additive seasonal indices from the target.
    Deseasonalize { period: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSpec {
    /// Lag order for regressors, AR order for ARIMA, lag order for VAR.
    pub lag_order: usize,
    /// Steps to score; `None` scores the whole test suffix.
    pub horizon: Option<usize>,
    pub mode: ForecastMode,
    pub preprocess: Preprocess,
    /// Feed non-target columns to the regressors as exogenous features.
    pub use_exog: bool,
}

impl Default for EvalSpec {
    fn default() -> Self {
        Self {
            lag_order: 24,
            horizon: None,
            mode: ForecastMode::OneStep,
            preprocess: Preprocess::Lags,
            use_exog: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub series: MultiSeries,
    pub target: String,
}

impl Dataset {
    pub fn new(name: impl Into<String>, series: MultiSeries, target: impl Into<String>) -> Result<Self> {
        let target = target.into();
        series.column_index(&target)?;
        Ok(Self { name: name.into(), series, target })
    }

    /// Resample with the target summed and every other column averaged.
    pub fn resample(&self, interval: i64) -> Result<Dataset> {
        let series = resample_multi(&self.series, interval, |name| {
            if name == self.target {
                AggregateMode::Sum
            } else {
                AggregateMode::Mean
            }
        })?;
        Ok(Dataset { name: self.name.clone(), series, target: self.target.clone() })
    }
}

/// Series in the space the model is fitted in, plus what is needed to map
/// predictions back.
#[derive(Debug, Clone)]
struct Working {
    series: MultiSeries,
    /// First position with a defined value (1 after differencing).
    first: usize,
    seasonal: Option<Decomposition>,
}

fn prepare(dataset: &Dataset, n_train: usize, preprocess: Preprocess) -> Result<Working> {
    match preprocess {
        Preprocess::Lags => Ok(Working { series: dataset.series.clone(), first: 0, seasonal: None }),
        Preprocess::Difference => {
            let series = dataset.series.map_columns(|_, v| {
                std::iter::once(MISSING).chain(v.windows(2).map(|w| w[1] - w[0])).collect()
            })?;
            Ok(Working { series, first: 1, seasonal: None })
        }
        Preprocess::Deseasonalize { period } => {
            let target = dataset.series.column(&dataset.target)?;
            let dec = decompose_values(&target[..n_train], period)?;
            let series = dataset.series.map_columns(|name, v| {
                if name == dataset.target {
                    v.iter().enumerate().map(|(i, x)| x - dec.seasonal_at(i)).collect()
                } else {
                    v.to_vec()
                }
            })?;
            Ok(Working { series, first: 0, seasonal: Some(dec) })
        }
    }
}

#[derive(Debug)]
enum Inner {
    Mean(f64),
    Regressor { model: Box<dyn Regressor>, exog: Vec<usize> },
    Arima(ArimaModel),
    Var(VarModel),
}

/// A model fitted on the training prefix of one dataset.
#[derive(Debug)]
pub struct FittedForecaster {
    pub kind: ModelKind,
    pub n_train: usize,
    spec: EvalSpec,
    working: Working,
    target_index: usize,
    inner: Inner,
}

impl FittedForecaster {
    /// Everything learned from the training data, flattened.
    pub fn parameters(&self) -> Vec<f64> {
        let mut out = match &self.inner {
            Inner::Mean(m) => vec![*m],
            Inner::Regressor { model, .. } => model.parameters(),
            Inner::Arima(m) => m.parameters(),
            Inner::Var(m) => m.parameters(),
        };
        if let Some(dec) = &self.working.seasonal {
            out.extend(&dec.seasonal_indices);
        }
        out
    }

    pub fn regressor(&self) -> Option<&dyn Regressor> {
        match &self.inner {
            Inner::Regressor { model, .. } => Some(model.as_ref()),
            _ => None,
        }
    }

    pub fn arima(&self) -> Option<&ArimaModel> {
        match &self.inner {
            Inner::Arima(m) => Some(m),
            _ => None,
        }
    }

    pub fn var(&self) -> Option<&VarModel> {
        match &self.inner {
            Inner::Var(m) => Some(m),
            _ => None,
        }
    }

    fn working_target(&self) -> &[f64] {
        &self.working.series.columns()[self.target_index].values
    }

    /// Working-space predictions for positions `origin..origin + horizon`.
    /// `origin` must equal the training length in recursive mode.
    fn predict_working(&self, origin: usize, horizon: usize, mode: ForecastMode) -> Result<Vec<f64>> {
        let w = self.working_target();
        let first = self.working.first;
        let p = self.spec.lag_order;
        match &self.inner {
            Inner::Mean(_) => Ok(vec![MISSING; horizon]),
            Inner::Regressor { model, exog } => {
                let exog_cols: Vec<&[f64]> =
                    exog.iter().map(|&j| self.working.series.columns()[j].values.as_slice()).collect();
                let mut buf = w[..origin].to_vec();
                let mut out = Vec::with_capacity(horizon);
                for t in origin..origin + horizon {
                    let lags = match mode {
                        ForecastMode::OneStep => w,
                        ForecastMode::Recursive => &buf[..],
                    };
                    let row = lag_features(lags, &exog_cols, t, p);
                    let pred = if row.iter().any(|v| is_missing(*v)) { MISSING } else { model.predict(&row) };
                    out.push(pred);
                    buf.push(pred);
                }
                Ok(out)
            }
            Inner::Arima(m) => match mode {
                ForecastMode::OneStep => m.one_step_predictions(&w[first..], origin - first, horizon),
                ForecastMode::Recursive => m.forecast(&w[first..origin], horizon),
            },
            Inner::Var(m) => {
                let rows: Vec<Vec<f64>> =
                    (first..origin + horizon).map(|i| self.working.series.row(i)).collect();
                let preds = match mode {
                    ForecastMode::OneStep => m.one_step_rows(&rows, origin - first, horizon)?,
                    ForecastMode::Recursive => m.forecast_rows(&rows[..origin - first], horizon)?,
                };
                Ok(preds.into_iter().map(|r| r[self.target_index]).collect())
            }
        }
    }

    /// Predictions in original units for positions `origin..origin + horizon`
    /// of `original` (the untransformed target column).
    fn predict(&self, original: &[f64], origin: usize, horizon: usize, mode: ForecastMode) -> Result<Vec<f64>> {
        if let Inner::Mean(m) = self.inner {
            return Ok(vec![m; horizon]);
        }
        let working = self.predict_working(origin, horizon, mode)?;
        Ok(match self.spec.preprocess {
            Preprocess::Lags => working,
            Preprocess::Difference => {
                let mut prev = original[origin - 1];
                working
                    .iter()
                    .enumerate()
                    .map(|(k, dw)| {
                        let base = match mode {
                            ForecastMode::OneStep => original[origin + k - 1],
                            ForecastMode::Recursive => prev,
                        };
                        prev = base + dw;
                        prev
                    })
                    .collect()
            }
            Preprocess::Deseasonalize { .. } => {
                let dec = self.working.seasonal.as_ref().expect("seasonal fitted");
                working.iter().enumerate().map(|(k, v)| v + dec.seasonal_at(origin + k)).collect()
            }
        })
    }
}

fn train_values(values: &[f64], n_train: usize) -> Vec<f64> {
    values[..n_train].iter().copied().filter(|v| !is_missing(*v)).collect()
}

/// Fit `model` on the training prefix of `dataset`.
pub fn fit_train(model: &ModelSpec, dataset: &Dataset, split: SplitSpec, spec: &EvalSpec) -> Result<FittedForecaster> {
    fit_prefix(model, dataset, split.train_len(dataset.series.len())?, spec)
}

/// Fit `model` on the first `n_train` observations of `dataset`.
pub fn fit_prefix(model: &ModelSpec, dataset: &Dataset, n_train: usize, spec: &EvalSpec) -> Result<FittedForecaster> {
    if n_train == 0 || n_train > dataset.series.len() {
        return Err(Error::TooShort { needed: n_train.max(1), got: dataset.series.len() });
    }
    let working = prepare(dataset, n_train, spec.preprocess)?;
    let target_index = dataset.series.column_index(&dataset.target)?;
    let first = working.first;

    let inner = match model.kind {
        ModelKind::Mean => {
            let train = train_values(dataset.series.column(&dataset.target)?, n_train);
            if train.is_empty() {
                return Err(Error::TooShort { needed: 1, got: 0 });
            }
            Inner::Mean(train.iter().sum::<f64>() / train.len() as f64)
        }
        ModelKind::Ols | ModelKind::Knn | ModelKind::Gp | ModelKind::Svr | ModelKind::Mlp => {
            let exog: Vec<usize> = if spec.use_exog {
                (0..working.series.width()).filter(|&j| j != target_index).collect()
            } else {
                Vec::new()
            };
            let mut keep = vec![target_index];
            keep.extend(&exog);
            let cols = keep.iter().map(|&j| working.series.columns()[j].clone()).collect();
            let view = MultiSeries::new(working.series.start(), working.series.interval(), cols)?;
            let frame = lag_embed(&view.slice(0..n_train), spec.lag_order, &dataset.target)?;
            if frame.n_samples() == 0 {
                return Err(Error::TooShort { needed: spec.lag_order + 1, got: 0 });
            }
            let reg = model.regressor().expect("regressor kind");
            Inner::Regressor { model: reg.fit(&frame)?, exog }
        }
        ModelKind::Arima => {
            let w = &working.series.columns()[target_index].values[first..n_train];
            let order = ArimaOrder::new(spec.lag_order, model.hyper.d, model.hyper.q);
            Inner::Arima(arima::fit_values(w, order)?)
        }
        ModelKind::Var => Inner::Var(var::var_fit(&working.series.slice(first..n_train), spec.lag_order)?),
    };
    Ok(FittedForecaster { kind: model.kind, n_train, spec: spec.clone(), working, target_index, inner })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub model_index: usize,
    pub model: String,
    pub dataset: String,
    /// Series interval in seconds.
    pub interval: i64,
    pub split: f64,
    pub mode: ForecastMode,
    pub horizon: usize,
    /// Test points with both an actual and a prediction.
    pub scored: usize,
    pub rmse: Option<f64>,
    pub mae: Option<f64>,
    pub rae: Option<f64>,
    pub fit_seconds: f64,
    pub predict_seconds: f64,
    pub error: Option<String>,
}

impl EvalRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    fn failed(model_index: usize, model: &ModelSpec, dataset: &Dataset, interval: i64, split: f64, spec: &EvalSpec, err: &Error) -> Self {
        Self {
            model_index,
            model: model.kind.name().into(),
            dataset: dataset.name.clone(),
            interval,
            split,
            mode: spec.mode,
            horizon: spec.horizon.unwrap_or(0),
            scored: 0,
            rmse: None,
            mae: None,
            rae: None,
            fit_seconds: 0.0,
            predict_seconds: 0.0,
            error: Some(err.to_string()),
        }
    }
}

/// Scored forecast of one split, with the aligned actual and predicted
/// values in original units.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub record: EvalRecord,
    pub origin: usize,
    pub actual: Vec<f64>,
    pub predicted: Vec<f64>,
}

pub fn evaluate(model: &ModelSpec, dataset: &Dataset, split: SplitSpec, spec: &EvalSpec) -> Result<EvalRecord> {
    evaluate_detailed(model, 0, dataset, split, spec).map(|e| e.record)
}

pub fn evaluate_detailed(
    model: &ModelSpec,
    model_index: usize,
    dataset: &Dataset,
    split: SplitSpec,
    spec: &EvalSpec,
) -> Result<Evaluation> {
    let n_train = split.train_len(dataset.series.len())?;
    let mut e = evaluate_prefix(model, model_index, dataset, n_train, spec)?;
    e.record.split = split.train_fraction;
    Ok(e)
}

/// Evaluate with the first `n_train` observations as the training set. The
/// record's `split` is `n_train / n`.
pub fn evaluate_prefix(
    model: &ModelSpec,
    model_index: usize,
    dataset: &Dataset,
    n_train: usize,
    spec: &EvalSpec,
) -> Result<Evaluation> {
    let n = dataset.series.len();
    if n_train == 0 || n_train >= n {
        return Err(Error::InsufficientTest(format!("training length {n_train} leaves no test data in {n}")));
    }
    let n_test = n - n_train;
    let horizon = spec.horizon.unwrap_or(n_test);
    if horizon == 0 || horizon > n_test {
        return Err(Error::InsufficientTest(format!(
            "horizon {horizon} does not fit a test partition of {n_test}"
        )));
    }
    let fit_start = Instant::now();
    let fitted = fit_prefix(model, dataset, n_train, spec)?;
    let fit_seconds = fit_start.elapsed().as_secs_f64();

    let original = dataset.series.column(&dataset.target)?;
    let predict_start = Instant::now();
    let predicted = fitted.predict(original, n_train, horizon, spec.mode)?;
    let predict_seconds = predict_start.elapsed().as_secs_f64();

    let actual = &original[n_train..n_train + horizon];
    let (a, p): (Vec<f64>, Vec<f64>) = actual
        .iter()
        .zip(&predicted)
        .filter(|(a, p)| !is_missing(**a) && !is_missing(**p))
        .map(|(a, p)| (*a, *p))
        .unzip();
    if a.is_empty() {
        return Err(Error::InsufficientTest("no test point has both an actual and a prediction".into()));
    }
    let m = metrics(&a, &p, &train_values(original, n_train))?;
    Ok(Evaluation {
        record: EvalRecord {
            model_index,
            model: model.kind.name().into(),
            dataset: dataset.name.clone(),
            interval: dataset.series.interval(),
            split: n_train as f64 / n as f64,
            mode: spec.mode,
            horizon,
            scored: a.len(),
            rmse: Some(m.rmse),
            mae: Some(m.mae),
            rae: m.rae,
            fit_seconds,
            predict_seconds,
            error: None,
        },
        origin: n_train,
        actual: actual.to_vec(),
        predicted,
    })
}

/// Fit on the whole series and forecast `horizon` steps past its end.
///
/// Always recursive. Regressors cannot use exogenous columns here because
/// their future values are unknown; VAR forecasts them jointly instead.
pub fn forecast_ahead(model: &ModelSpec, dataset: &Dataset, spec: &EvalSpec, horizon: usize) -> Result<Vec<f64>> {
    if horizon == 0 {
        return Err(Error::Config("horizon must be at least 1".into()));
    }
    if spec.use_exog && model.regressor().is_some() {
        return Err(Error::Config(
            "exogenous features need future values; use --backtest or the var model".into(),
        ));
    }
    let n = dataset.series.len();
    let fitted = fit_prefix(model, dataset, n, spec)?;
    fitted.predict(dataset.series.column(&dataset.target)?, n, horizon, ForecastMode::Recursive)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank: usize,
    pub model_index: usize,
    pub model: String,
    /// Mean RAE (per dataset) or mean rank (overall); `None` if no cell
    /// produced a score.
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRanking {
    pub dataset: String,
    pub entries: Vec<RankEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub per_dataset: Vec<DatasetRanking>,
    pub overall: Vec<RankEntry>,
}

fn rank_scores(models: &[(usize, String)], scores: &[Option<f64>]) -> Vec<RankEntry> {
    let mut order: Vec<usize> = (0..models.len()).collect();
    order.sort_by(|&a, &b| match (scores[a], scores[b]) {
        (Some(x), Some(y)) => x.total_cmp(&y).then(a.cmp(&b)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.cmp(&b),
    });
    order
        .into_iter()
        .enumerate()
        .map(|(pos, m)| RankEntry {
            rank: pos + 1,
            model_index: models[m].0,
            model: models[m].1.clone(),
            score: scores[m],
        })
        .collect()
}

/// Rank models by ascending mean RAE on each dataset, then overall by mean
/// rank across datasets. Ties keep registration order.
pub fn rank(records: &[EvalRecord], models: &[(usize, String)], datasets: &[String]) -> Ranking {
    let per_dataset: Vec<DatasetRanking> = datasets
        .iter()
        .map(|ds| {
            let scores: Vec<Option<f64>> = models
                .iter()
                .map(|(idx, _)| {
                    let raes: Vec<f64> = records
                        .iter()
                        .filter(|r| &r.dataset == ds && r.model_index == *idx)
                        .filter_map(|r| r.rae)
                        .collect();
                    (!raes.is_empty()).then(|| raes.iter().sum::<f64>() / raes.len() as f64)
                })
                .collect();
            DatasetRanking { dataset: ds.clone(), entries: rank_scores(models, &scores) }
        })
        .collect();

    let overall_scores: Vec<Option<f64>> = models
        .iter()
        .map(|(idx, _)| {
            let ranks: Vec<f64> = per_dataset
                .iter()
                .flat_map(|d| d.entries.iter().filter(|e| e.model_index == *idx && e.score.is_some()))
                .map(|e| e.rank as f64)
                .collect();
            (!ranks.is_empty()).then(|| ranks.iter().sum::<f64>() / ranks.len() as f64)
        })
        .collect();
    Ranking { per_dataset, overall: rank_scores(models, &overall_scores) }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub records: Vec<EvalRecord>,
    pub ranking: Ranking,
}

/// A full Cartesian sweep: datasets × intervals × splits × models.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub models: Vec<ModelSpec>,
    pub datasets: Vec<Dataset>,
    pub splits: Vec<f64>,
    /// Target intervals in seconds; `None` keeps a dataset's own interval.
    pub intervals: Vec<Option<i64>>,
    pub spec: EvalSpec,
    pub jobs: usize,
}

impl Benchmark {
    pub fn new(models: Vec<ModelSpec>, datasets: Vec<Dataset>, splits: Vec<f64>, spec: EvalSpec) -> Self {
        Self { models, datasets, splits, intervals: vec![None], spec, jobs: 1 }
    }

    pub fn run(&self) -> Result<EvaluationReport> {
        benchmark(self)
    }
}

pub fn benchmark(plan: &Benchmark) -> Result<EvaluationReport> {
    if plan.models.is_empty() || plan.datasets.is_empty() || plan.splits.is_empty() || plan.intervals.is_empty() {
        return Err(Error::Config("benchmark needs at least one model, dataset, split and interval".into()));
    }

    // Resample once per (dataset, interval).
    let mut variants: Vec<(usize, i64, Result<Dataset>)> = Vec::new();
    for (di, ds) in plan.datasets.iter().enumerate() {
        for iv in &plan.intervals {
            let (interval, resampled) = match iv {
                None => (ds.series.interval(), Ok(ds.clone())),
                Some(target) => (*target, ds.resample(*target)),
            };
            variants.push((di, interval, resampled));
        }
    }

    struct Cell {
        variant: usize,
        split: f64,
        model: usize,
    }
    let mut cells = Vec::new();
    for v in 0..variants.len() {
        for &split in &plan.splits {
            for model in 0..plan.models.len() {
                cells.push(Cell { variant: v, split, model });
            }
        }
    }

    let run_cell = |cell: &Cell| -> EvalRecord {
        let (di, interval, resampled) = &variants[cell.variant];
        let source = &plan.datasets[*di];
        let model = &plan.models[cell.model];
        let outcome = resampled.as_ref().map_err(|e| Error::Config(e.to_string())).and_then(|ds| {
            let split = SplitSpec::new(cell.split)?;
            evaluate_detailed(model, cell.model, ds, split, &plan.spec).map(|e| e.record)
        });
        match outcome {
            Ok(r) => r,
            Err(e) => {
                let msg = match resampled {
                    Err(re) => Error::Config(re.to_string()),
                    Ok(_) => e,
                };
                EvalRecord::failed(cell.model, model, source, *interval, cell.split, &plan.spec, &msg)
            }
        }
    };

    let jobs = plan.jobs.max(1).min(cells.len());
    let records: Vec<EvalRecord> = if jobs <= 1 {
        cells.iter().map(run_cell).collect()
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<EvalRecord>>> = Mutex::new(vec![None; cells.len()]);
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= cells.len() {
                        break;
                    }
                    let rec = run_cell(&cells[i]);
                    slots.lock().expect("no panics while holding the lock")[i] = Some(rec);
                });
            }
        });
        slots.into_inner().expect("threads joined").into_iter().map(|r| r.expect("every cell ran")).collect()
    };

    let models: Vec<(usize, String)> =
        plan.models.iter().enumerate().map(|(i, m)| (i, m.kind.name().to_string())).collect();
    let datasets: Vec<String> = plan.datasets.iter().map(|d| d.name.clone()).collect();
    let ranking = rank(&records, &models, &datasets);
    Ok(EvaluationReport { records, ranking })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x}"))
}

impl EvaluationReport {
    pub fn all_failed(&self) -> bool {
        self.records.iter().all(|r| !r.ok())
    }

    /// One record per line in fixed field order, then the ranking tables.
    pub fn to_text(&self, include_timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "model={} index={} dataset={} interval={} split={} mode={} horizon={} scored={} rmse={} mae={} rae={}",
                r.model,
                r.model_index,
                r.dataset,
                r.interval,
                r.split,
                r.mode,
                r.horizon,
                r.scored,
                fmt_opt(r.rmse),
                fmt_opt(r.mae),
                fmt_opt(r.rae),
            ));
            if include_timings {
                out.push_str(&format!(" fit_seconds={} predict_seconds={}", r.fit_seconds, r.predict_seconds));
            }
            match &r.error {
                None => out.push_str(" status=ok\n"),
                Some(e) => out.push_str(&format!(" status=failed error=\"{}\"\n", e.replace('"', "'"))),
            }
        }
        for d in &self.ranking.per_dataset {
            out.push_str(&format!("\nranking dataset={} (mean RAE)\n", d.dataset));
            for e in &d.entries {
                out.push_str(&format!("{:>3}  {:<6} #{:<3} {}\n", e.rank, e.model, e.model_index, fmt_opt(e.score)));
            }
        }
        out.push_str("\nranking overall (mean rank)\n");
        for e in &self.ranking.overall {
            out.push_str(&format!("{:>3}  {:<6} #{:<3} {}\n", e.rank, e.model, e.model_index, fmt_opt(e.score)));
        }
        out
    }

    /// Pretty JSON with the resolved configuration embedded.
    pub fn to_json(&self, config: &serde_json::Value, include_timings: bool) -> Result<String> {
        let mut records = serde_json::to_value(&self.records)?;
        if !include_timings {
            if let Some(list) = records.as_array_mut() {
                for r in list {
                    if let Some(obj) = r.as_object_mut() {
                        obj.remove("fit_seconds");
                        obj.remove("predict_seconds");
                    }
                }
            }
        }
        let doc = serde_json::json!({
            "config": config,
            "records": records,
            "ranking": self.ranking,
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Column;

    fn dataset(values: Vec<f64>) -> Dataset {
        let s = MultiSeries::new(0, 3600, vec![Column { name: "energy".into(), values }]).unwrap();
        Dataset::new("toy", s, "energy").unwrap()
    }

    #[test]
    fn metric_examples() {
        let m = metrics(&[1.0, 2.0], &[1.0, 2.0], &[0.0, 5.0]).unwrap();
        assert_eq!((m.rmse, m.mae, m.rae), (0.0, 0.0, Some(0.0)));

        let m = metrics(&[0.0, 0.0], &[3.0, 1.0], &[1.0, 3.0]).unwrap();
        assert_eq!(m.mae, 2.0);
        assert_eq!(m.rmse, 5f64.sqrt());
        assert_eq!(m.rae, Some(1.0));

        let m = metrics(&[4.0, 6.0, 1.0], &[2.0; 3], &[2.0]).unwrap();
        assert_eq!(m.rae, Some(1.0));

        let m = metrics(&[2.0, 2.0], &[1.0, 3.0], &[2.0]).unwrap();
        assert_eq!(m.rae, None);

        assert!(matches!(metrics(&[1.0], &[1.0, 2.0], &[1.0]), Err(Error::LengthMismatch { .. })));
        assert!(metrics(&[], &[], &[1.0]).is_err());
    }

    #[test]
    fn split_arithmetic() {
        let ds = dataset((0..10).map(|v| (v * v) as f64).collect());
        let spec = EvalSpec { lag_order: 2, ..Default::default() };
        let r = evaluate(&ModelSpec::new(ModelKind::Ols), &ds, SplitSpec::new(0.8).unwrap(), &spec).unwrap();
        assert_eq!(r.horizon, 2);
        assert_eq!(r.scored, 2);
        assert!(SplitSpec::new(1.0).is_err());
        assert!(SplitSpec::new(0.01).unwrap().train_len(10).is_err());
    }

    #[test]
    fn mean_model_has_unit_rae() {
        let ds = dataset((0..50).map(|v| ((v * 13) % 7) as f64).collect());
        let r = evaluate(&ModelSpec::new(ModelKind::Mean), &ds, SplitSpec::new(0.6).unwrap(), &EvalSpec::default())
            .unwrap();
        assert_eq!(r.rae, Some(1.0));
    }

    #[test]
    fn difference_recovers_ramp_exactly() {
        let ds = dataset((0..40).map(|v| 5.0 + 2.0 * v as f64).collect());
        for mode in [ForecastMode::OneStep, ForecastMode::Recursive] {
            let spec = EvalSpec { lag_order: 2, mode, preprocess: Preprocess::Difference, ..Default::default() };
            let r = evaluate(&ModelSpec::new(ModelKind::Ols), &ds, SplitSpec::new(0.75).unwrap(), &spec).unwrap();
            assert!(r.mae.unwrap() < 1e-9, "{mode}: {:?}", r.mae);
        }
    }

    #[test]
    fn deseasonalize_restores_pattern() {
        let pattern = [3.0, -1.0, 0.0, -2.0];
        let ds = dataset((0..48).map(|v| 10.0 + pattern[v % 4]).collect());
        let spec = EvalSpec {
            lag_order: 1,
            mode: ForecastMode::Recursive,
            preprocess: Preprocess::Deseasonalize { period: 4 },
            ..Default::default()
        };
        let r = evaluate(&ModelSpec::new(ModelKind::Knn), &ds, SplitSpec::new(0.5).unwrap(), &spec).unwrap();
        assert!(r.mae.unwrap() < 1e-9);
    }

    #[test]
    fn horizon_larger_than_test_is_rejected() {
        let ds = dataset((0..10).map(|v| v as f64).collect());
        let spec = EvalSpec { lag_order: 2, horizon: Some(5), ..Default::default() };
        assert!(matches!(
            evaluate(&ModelSpec::new(ModelKind::Ols), &ds, SplitSpec::new(0.8).unwrap(), &spec),
            Err(Error::InsufficientTest(_))
        ));
    }

    #[test]
    fn ranking_orders_and_breaks_ties() {
        let mk = |idx: usize, model: &str, rae: Option<f64>| EvalRecord {
            model_index: idx,
            model: model.into(),
            dataset: "a".into(),
            interval: 3600,
            split: 0.5,
            mode: ForecastMode::OneStep,
            horizon: 1,
            scored: 1,
            rmse: Some(1.0),
            mae: Some(1.0),
            rae,
            fit_seconds: 0.0,
            predict_seconds: 0.0,
            error: None,
        };
        let records = vec![mk(0, "ols", Some(0.5)), mk(1, "knn", Some(0.2)), mk(2, "ols", Some(0.5)), mk(3, "gp", None)];
        let models = vec![(0, "ols".into()), (1, "knn".into()), (2, "ols".into()), (3, "gp".into())];
        let r = rank(&records, &models, &["a".into()]);
        let order: Vec<usize> = r.per_dataset[0].entries.iter().map(|e| e.model_index).collect();
        assert_eq!(order, vec![1, 0, 2, 3]);
        assert_eq!(r.overall[0].model_index, 1);
    }
}
