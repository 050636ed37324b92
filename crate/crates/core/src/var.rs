//! Vector autoregression estimated equation by equation with OLS.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::series::{is_missing, MultiSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarModel {
    pub lag_order: usize,
    pub names: Vec<String>,
    pub intercept: Vec<f64>,
    /// `coefficients[i]` is the `k × k` matrix `A_{i+1}`, row-major:
    /// `coefficients[i][r][c]` weights variable `c` at lag `i+1` in
    /// equation `r`.
    pub coefficients: Vec<Vec<Vec<f64>>>,
    /// Residual covariance (`EᵀE / n_eff`).
    pub residual_covariance: Vec<Vec<f64>>,
    pub n_effective: usize,
    pub jittered: bool,
}

fn lagged_row(rows: &[Vec<f64>], t: usize, p: usize) -> Vec<f64> {
    (1..=p).flat_map(|i| rows[t - i].iter().copied()).collect()
}

fn rows_of(m: &MultiSeries) -> Result<Vec<Vec<f64>>> {
    for c in m.columns() {
        if c.values.iter().any(|v| is_missing(*v)) {
            return Err(Error::MissingCells { column: c.name.clone() });
        }
    }
    Ok((0..m.len()).map(|i| m.row(i)).collect())
}

/// Fit VAR(p) on rows `skip..` of `m`, using earlier rows only as lags.
fn fit_from(m: &MultiSeries, p: usize, skip: usize) -> Result<VarModel> {
    if p == 0 {
        return Err(Error::InvalidArgument("VAR lag order must be at least 1".into()));
    }
    let k = m.width();
    let rows = rows_of(m)?;
    let start = skip.max(p);
    let n_eff = rows.len().saturating_sub(start);
    if n_eff < k * p + 1 {
        return Err(Error::TooShort { needed: start + k * p + 1, got: rows.len() });
    }
    let design: Vec<Vec<f64>> = (start..rows.len()).map(|t| lagged_row(&rows, t, p)).collect();
    let targets: Vec<Vec<f64>> = (0..k).map(|c| rows[start..].iter().map(|r| r[c]).collect()).collect();
    let fit = least_squares(&design, &targets)?;

    let coefficients = (0..p)
        .map(|lag| {
            (0..k)
                .map(|eq| (0..k).map(|var| fit.slopes[eq][lag * k + var]).collect())
                .collect()
        })
        .collect();
    let mut model = VarModel {
        lag_order: p,
        names: m.names().into_iter().map(String::from).collect(),
        intercept: fit.intercepts,
        coefficients,
        residual_covariance: vec![vec![0.0; k]; k],
        n_effective: n_eff,
        jittered: fit.jittered,
    };
    let residuals: Vec<Vec<f64>> = (start..rows.len())
        .map(|t| {
            let pred = model.predict_next(&rows[..t]);
            rows[t].iter().zip(&pred).map(|(a, b)| a - b).collect()
        })
        .collect();
    for a in 0..k {
        for b in 0..k {
            model.residual_covariance[a][b] =
                residuals.iter().map(|r| r[a] * r[b]).sum::<f64>() / n_eff as f64;
        }
    }
    Ok(model)
}

pub fn var_fit(m: &MultiSeries, p: usize) -> Result<VarModel> {
    fit_from(m, p, 0)
}

impl VarModel {
    pub fn k(&self) -> usize {
        self.names.len()
    }

    /// `c + Σ A_i y_{t-i}` given rows up to `t - 1` (the last `p` are used).
    pub fn predict_next(&self, history: &[Vec<f64>]) -> Vec<f64> {
        let k = self.k();
        let t = history.len();
        let mut out = self.intercept.clone();
        for (lag, a) in self.coefficients.iter().enumerate() {
            let y = &history[t - 1 - lag];
            for r in 0..k {
                out[r] += a[r].iter().zip(y).map(|(c, v)| c * v).sum::<f64>();
            }
        }
        out
    }

    /// Recursive forecast; returns `horizon` rows of `k` values.
    pub fn forecast_rows(&self, history: &[Vec<f64>], horizon: usize) -> Result<Vec<Vec<f64>>> {
        if history.len() < self.lag_order {
            return Err(Error::HistoryTooShort { needed: self.lag_order, got: history.len() });
        }
        let mut buf: Vec<Vec<f64>> = history[history.len() - self.lag_order..].to_vec();
        let mut out = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            let next = self.predict_next(&buf);
            buf.push(next.clone());
            out.push(next);
        }
        Ok(out)
    }

    /// One-step predictions of rows `origin..origin + horizon` of `rows`,
    /// each from the observed rows before it.
    pub fn one_step_rows(&self, rows: &[Vec<f64>], origin: usize, horizon: usize) -> Result<Vec<Vec<f64>>> {
        if origin < self.lag_order {
            return Err(Error::HistoryTooShort { needed: self.lag_order, got: origin });
        }
        if rows.len() < origin + horizon {
            return Err(Error::LengthMismatch { left: rows.len(), right: origin + horizon });
        }
        Ok((origin..origin + horizon).map(|t| self.predict_next(&rows[..t])).collect())
    }

    /// Flattened `[c, A_1, …, A_p, Σ]`.
    pub fn parameters(&self) -> Vec<f64> {
        let mut out = self.intercept.clone();
        out.extend(self.coefficients.iter().flatten().flatten());
        out.extend(self.residual_covariance.iter().flatten());
        out
    }

    /// `log det Σ + 2 (k² p + k) / n`.
    pub fn aic(&self) -> f64 {
        let k = self.k();
        let sigma = DMatrix::from_fn(k, k, |a, b| self.residual_covariance[a][b]);
        let det = sigma.determinant();
        let params = (k * k * self.lag_order + k) as f64;
        det.max(f64::MIN_POSITIVE).ln() + 2.0 * params / self.n_effective as f64
    }
}

fn check_columns(model: &VarModel, history: &MultiSeries) -> Result<()> {
    if history.names() != model.names.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "history columns {:?} do not match model columns {:?}",
            history.names(),
            model.names
        )));
    }
    Ok(())
}

pub fn var_forecast(model: &VarModel, history: &MultiSeries, horizon: usize) -> Result<Vec<Vec<f64>>> {
    check_columns(model, history)?;
    model.forecast_rows(&rows_of(history)?, horizon)
}

/// Lag order in `1..=max_p` minimizing AIC. Every candidate is fitted on
/// the same effective sample (the first `max_p` rows are lags only); ties
/// go to the smaller order.
pub fn select_var_order(m: &MultiSeries, max_p: usize) -> Result<usize> {
    if max_p == 0 {
        return Err(Error::InvalidArgument("max_p must be at least 1".into()));
    }
    let mut best = (1, f64::INFINITY);
    for p in 1..=max_p {
        let aic = fit_from(m, p, max_p)?.aic();
        if aic < best.1 {
            best = (p, aic);
        }
    }
    Ok(best.0)
}

/// AIC of VAR(p) on the common sample used by [`select_var_order`].
pub fn var_aic(m: &MultiSeries, p: usize, max_p: usize) -> Result<f64> {
    Ok(fit_from(m, p, max_p)?.aic())
}
