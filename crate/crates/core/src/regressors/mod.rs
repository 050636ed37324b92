//! The five supervised regressors, fitted on lag-embedded frames.
//!
//! Every fitted model implements [`Regressor`]. Kernel and neural models
//! standardize their inputs (and targets) internally from the training
//! frame, so callers always predict in original units.

mod gp;
mod knn;
mod mlp;
mod ols;
mod svr;

pub use gp::{GpModel, GpParams};
pub use knn::{KnnModel, KnnParams};
pub use mlp::{MlpModel, MlpNetwork, MlpParams};
pub use ols::OlsModel;
pub use svr::{dual_objective, gaussian_kernel, solve_dual, DualSolution, SvrModel, SvrParams};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::SupervisedFrame;

/// How a multi-step span is forecast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForecastMode {
    /// Each step conditions on the observed values before it.
    OneStep,
    /// Predictions are fed back as inputs for later steps.
    Recursive,
}

impl std::str::FromStr for ForecastMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-step" | "one_step" | "one_step_true_history" => Ok(ForecastMode::OneStep),
            "recursive" => Ok(ForecastMode::Recursive),
            other => Err(Error::Config(format!("unknown forecast mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for ForecastMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ForecastMode::OneStep => "one_step",
            ForecastMode::Recursive => "recursive",
        })
    }
}

pub trait Regressor: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &'static str;

    fn predict(&self, x: &[f64]) -> f64;

    /// Every fitted quantity flattened in a fixed order. Two fits are
    /// identical iff these vectors are bitwise equal.
    fn parameters(&self) -> Vec<f64>;

    fn predict_many(&self, rows: &[Vec<f64>]) -> Vec<f64> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    /// Forecast `horizon` steps of a univariate series embedded with `lag`.
    ///
    /// In [`ForecastMode::OneStep`] the last `horizon` entries of `history`
    /// are the actual values being predicted, and each prediction uses the
    /// observed values before it. In [`ForecastMode::Recursive`] forecasting
    /// starts after the end of `history`.
    fn predict_series(
        &self,
        history: &[f64],
        lag: usize,
        horizon: usize,
        mode: ForecastMode,
    ) -> Result<Vec<f64>> {
        match mode {
            ForecastMode::OneStep => {
                if history.len() < horizon + lag {
                    return Err(Error::HistoryTooShort { needed: horizon + lag, got: history.len() });
                }
                let origin = history.len() - horizon;
                Ok((origin..history.len()).map(|t| self.predict(&history[t - lag..t])).collect())
            }
            ForecastMode::Recursive => {
                if history.len() < lag {
                    return Err(Error::HistoryTooShort { needed: lag, got: history.len() });
                }
                let mut buf = history[history.len() - lag..].to_vec();
                let mut out = Vec::with_capacity(horizon);
                for _ in 0..horizon {
                    let next = self.predict(&buf[buf.len() - lag..]);
                    out.push(next);
                    buf.push(next);
                }
                Ok(out)
            }
        }
    }
}

/// A regressor family together with its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum RegressorSpec {
    Ols,
    Knn(KnnParams),
    Gp(GpParams),
    Svr(SvrParams),
    Mlp(MlpParams),
}

impl RegressorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            RegressorSpec::Ols => "ols",
            RegressorSpec::Knn(_) => "knn",
            RegressorSpec::Gp(_) => "gp",
            RegressorSpec::Svr(_) => "svr",
            RegressorSpec::Mlp(_) => "mlp",
        }
    }

    pub fn fit(&self, frame: &SupervisedFrame) -> Result<Box<dyn Regressor>> {
        Ok(match self {
            RegressorSpec::Ols => Box::new(OlsModel::fit(frame)?),
            RegressorSpec::Knn(p) => Box::new(KnnModel::fit(frame, p)?),
            RegressorSpec::Gp(p) => Box::new(GpModel::fit(frame, p)?),
            RegressorSpec::Svr(p) => Box::new(SvrModel::fit(frame, p)?),
            RegressorSpec::Mlp(p) => Box::new(MlpModel::fit(frame, p)?),
        })
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn require_samples(frame: &SupervisedFrame, needed: usize) -> Result<()> {
    if frame.n_samples() < needed {
        return Err(Error::TooShort { needed, got: frame.n_samples() });
    }
    Ok(())
}
