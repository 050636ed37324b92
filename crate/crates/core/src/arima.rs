//! ARIMA(p, d, q) by conditional sum of squares.
//!
//! The series is differenced `d` times and an ARMA(p, q) with intercept is
//! fitted to the result:
//!
//! ```text
//! w_t = c + Σ φ_i w_{t-i} + Σ θ_j e_{t-j} + e_t
//! ```
//!
//! Estimation is two-stage. A Hannan–Rissanen regression gives starting
//! values, then Nelder–Mead refines them on the conditional sum of squared
//! one-step residuals, with residuals before the first `p` observations
//! fixed at zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ar_is_stationary, least_squares};
use crate::optimize::nelder_mead;
use crate::series::{is_missing, TimeSeries};
use crate::transform::difference_values;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
}

impl ArimaOrder {
    pub fn new(p: usize, d: usize, q: usize) -> Self {
        Self { p, d, q }
    }
}

impl std::fmt::Display for ArimaOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.p, self.d, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArimaModel {
    pub order: ArimaOrder,
    pub intercept: f64,
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    pub residual_variance: f64,
    /// First value of each differencing level of the training series.
    pub initial_values: Vec<f64>,
    /// All roots of the AR polynomial lie outside the unit circle.
    /// A `false` here is a warning, not a failure.
    pub stationary: bool,
    /// Conditional sum of squares at the returned parameters.
    pub css: f64,
    /// `[c, φ…, θ…]` from the Hannan–Rissanen stage.
    pub initializer: Vec<f64>,
    pub initializer_css: f64,
    pub evaluations: usize,
}

/// Long-AR order used to build residual proxies.
fn long_ar_order(n: usize) -> usize {
    (n / 4).clamp(1, 10)
}

/// One-step residuals of the ARMA recursion on `w`. Entries before `p` are
/// zero (conditioning), as are pre-sample shocks.
pub fn css_residuals(w: &[f64], intercept: f64, ar: &[f64], ma: &[f64]) -> Vec<f64> {
    let p = ar.len();
    let mut e = vec![0.0; w.len()];
    for t in p..w.len() {
        let mut fit = intercept;
        for (i, phi) in ar.iter().enumerate() {
            fit += phi * w[t - 1 - i];
        }
        for (j, theta) in ma.iter().enumerate() {
            if t > j {
                fit += theta * e[t - 1 - j];
            }
        }
        e[t] = w[t] - fit;
    }
    e
}

/// Conditional sum of squares of the ARMA recursion on `w`.
pub fn css_objective(w: &[f64], intercept: f64, ar: &[f64], ma: &[f64]) -> f64 {
    css_residuals(w, intercept, ar, ma)[ar.len()..].iter().map(|e| e * e).sum()
}

fn split_params(theta: &[f64], p: usize) -> (f64, &[f64], &[f64]) {
    (theta[0], &theta[1..1 + p], &theta[1 + p..])
}

fn hannan_rissanen(w: &[f64], p: usize, q: usize) -> Result<Vec<f64>> {
    let n = w.len();
    let proxies = if q > 0 {
        let m = long_ar_order(n);
        let rows: Vec<Vec<f64>> = (m..n).map(|t| (1..=m).map(|i| w[t - i]).collect()).collect();
        let fit = least_squares(&rows, &[w[m..].to_vec()])?;
        let mut e = vec![0.0; n];
        for (row, t) in rows.iter().zip(m..n) {
            let pred = fit.intercepts[0] + row.iter().zip(&fit.slopes[0]).map(|(a, b)| a * b).sum::<f64>();
            e[t] = w[t] - pred;
        }
        Some((m, e))
    } else {
        None
    };
    let start = match &proxies {
        Some((m, _)) => p.max(m + q),
        None => p,
    };
    let rows: Vec<Vec<f64>> = (start..n)
        .map(|t| {
            let mut row: Vec<f64> = (1..=p).map(|i| w[t - i]).collect();
            if let Some((_, e)) = &proxies {
                row.extend((1..=q).map(|j| e[t - j]));
            }
            row
        })
        .collect();
    let fit = least_squares(&rows, &[w[start..].to_vec()])?;
    let mut out = vec![fit.intercepts[0]];
    out.extend(&fit.slopes[0]);
    Ok(out)
}

pub fn arima_fit(s: &TimeSeries, order: ArimaOrder) -> Result<ArimaModel> {
    fit_values(s.values(), order)
}

pub(crate) fn fit_values(values: &[f64], order: ArimaOrder) -> Result<ArimaModel> {
    let ArimaOrder { p, d, q } = order;
    if p == 0 && q == 0 && d == 0 {
        return Err(Error::InvalidArgument("ARIMA(0,0,0) has no terms to estimate".into()));
    }
    if values.iter().any(|v| is_missing(*v)) {
        return Err(Error::MissingCells { column: "series".into() });
    }
    let needed = 20usize.max(4 * (p + q + 1));
    if values.len() < d || values.len() - d < needed {
        return Err(Error::TooShort { needed: needed + d, got: values.len() });
    }
    let (w, initial_values) = difference_values(values, d)?;
    let lo = w.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    if p + q == 0 {
        let mean = w.iter().sum::<f64>() / w.len() as f64;
        let css = css_objective(&w, mean, &[], &[]);
        return Ok(ArimaModel {
            order,
            intercept: mean,
            ar: Vec::new(),
            ma: Vec::new(),
            residual_variance: css / w.len() as f64,
            initial_values,
            stationary: true,
            css,
            initializer: vec![mean],
            initializer_css: css,
            evaluations: 0,
        });
    }
    if lo == hi {
        return Err(Error::DegenerateSeries);
    }

    // Refine on a standardized copy so that every parameter is O(1).
    let mean = w.iter().sum::<f64>() / w.len() as f64;
    let sd = (w.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / w.len() as f64).sqrt();
    let z: Vec<f64> = w.iter().map(|v| (v - mean) / sd).collect();
    let init_z = hannan_rissanen(&z, p, q)?;
    let max_evals = 500 * (p + q + 1);
    let refined = nelder_mead(
        |theta| {
            let (c, ar, ma) = split_params(theta, p);
            css_objective(&z, c, ar, ma)
        },
        &init_z,
        1e-8,
        max_evals,
    );

    let to_original = |theta: &[f64]| -> Vec<f64> {
        let phi_sum: f64 = theta[1..1 + p].iter().sum();
        let mut out = theta.to_vec();
        out[0] = sd * theta[0] + mean * (1.0 - phi_sum);
        out
    };
    let initializer = to_original(&init_z);
    let candidate = to_original(&refined.x);
    let objective = |theta: &[f64]| {
        let (c, ar, ma) = split_params(theta, p);
        css_objective(&w, c, ar, ma)
    };
    let initializer_css = objective(&initializer);
    let candidate_css = objective(&candidate);
    let (best, css) = if candidate_css <= initializer_css {
        (candidate, candidate_css)
    } else {
        (initializer.clone(), initializer_css)
    };

    let (c, ar, ma) = split_params(&best, p);
    Ok(ArimaModel {
        order,
        intercept: c,
        ar: ar.to_vec(),
        ma: ma.to_vec(),
        residual_variance: css / (w.len() - p) as f64,
        initial_values,
        stationary: ar_is_stationary(ar),
        css,
        initializer,
        initializer_css,
        evaluations: refined.evaluations,
    })
}

impl ArimaModel {
    /// Assemble a model from known coefficients, e.g. to forecast with
    /// externally estimated parameters.
    pub fn from_parts(order: ArimaOrder, intercept: f64, ar: Vec<f64>, ma: Vec<f64>) -> Result<Self> {
        if ar.len() != order.p || ma.len() != order.q {
            return Err(Error::ArityMismatch { expected: order.p + order.q, got: ar.len() + ma.len() });
        }
        let stationary = ar_is_stationary(&ar);
        Ok(Self {
            order,
            intercept,
            initializer: std::iter::once(intercept).chain(ar.iter().copied()).chain(ma.iter().copied()).collect(),
            ar,
            ma,
            residual_variance: 0.0,
            initial_values: Vec::new(),
            stationary,
            css: 0.0,
            initializer_css: 0.0,
            evaluations: 0,
        })
    }

    /// `[c, φ…, θ…, σ²]`
    pub fn parameters(&self) -> Vec<f64> {
        let mut out = vec![self.intercept];
        out.extend(&self.ar);
        out.extend(&self.ma);
        out.push(self.residual_variance);
        out
    }

    fn one_step(&self, w: &[f64], e: &[f64], s: usize) -> f64 {
        let mut fit = self.intercept;
        for (i, phi) in self.ar.iter().enumerate() {
            if s > i {
                fit += phi * w[s - 1 - i];
            }
        }
        for (j, theta) in self.ma.iter().enumerate() {
            if s > j {
                fit += theta * e[s - 1 - j];
            }
        }
        fit
    }

    /// Expectation forecast of the `horizon` values following `history`,
    /// in the units of `history`.
    pub fn forecast(&self, history: &[f64], horizon: usize) -> Result<Vec<f64>> {
        let ArimaOrder { p, d, .. } = self.order;
        if horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        let needed = (p + d).max(d + 1);
        if history.len() < needed {
            return Err(Error::HistoryTooShort { needed, got: history.len() });
        }
        if history.iter().any(|v| is_missing(*v)) {
            return Err(Error::MissingCells { column: "history".into() });
        }
        let mut levels = vec![history.to_vec()];
        for _ in 0..d {
            let prev = levels.last().expect("non-empty");
            levels.push(prev.windows(2).map(|x| x[1] - x[0]).collect());
        }
        let mut w = levels.pop().expect("level d");
        let mut e = css_residuals(&w, self.intercept, &self.ar, &self.ma);
        let mut lasts: Vec<f64> = levels.iter().map(|l| *l.last().expect("non-empty")).collect();

        let mut out = Vec::with_capacity(horizon);
        for _ in 0..horizon {
            let s = w.len();
            let next = self.one_step(&w, &e, s);
            w.push(next);
            e.push(0.0);
            let mut value = next;
            for last in lasts.iter_mut().rev() {
                *last += value;
                value = *last;
            }
            out.push(value);
        }
        Ok(out)
    }

    /// One-step-ahead predictions of `values[origin..origin + horizon]`,
    /// each conditioned on the observed values before it.
    pub fn one_step_predictions(&self, values: &[f64], origin: usize, horizon: usize) -> Result<Vec<f64>> {
        let ArimaOrder { p, d, .. } = self.order;
        let end = origin + horizon;
        if values.len() < end {
            return Err(Error::LengthMismatch { left: values.len(), right: end });
        }
        let needed = (p + d).max(d + 1);
        if origin < needed {
            return Err(Error::HistoryTooShort { needed, got: origin });
        }
        let span = &values[..end];
        if span.iter().any(|v| is_missing(*v)) {
            return Err(Error::MissingCells { column: "series".into() });
        }
        let mut levels = vec![span.to_vec()];
        for _ in 0..d {
            let prev = levels.last().expect("non-empty");
            levels.push(prev.windows(2).map(|x| x[1] - x[0]).collect());
        }
        let w = &levels[d];
        let e = css_residuals(w, self.intercept, &self.ar, &self.ma);
        Ok((origin..end)
            .map(|t| {
                let carried: f64 = (0..d).map(|j| levels[j][t - 1 - j]).sum();
                self.one_step(w, &e, t - d) + carried
            })
            .collect())
    }

    /// In-sample one-step predictions of the differenced series.
    pub fn fitted_differenced(&self, values: &[f64]) -> Result<Vec<f64>> {
        let (w, _) = difference_values(values, self.order.d)?;
        let e = css_residuals(&w, self.intercept, &self.ar, &self.ma);
        Ok(w.iter().zip(&e).map(|(a, b)| a - b).collect())
    }
}

pub fn arima_forecast(m: &ArimaModel, history: &TimeSeries, horizon: usize) -> Result<Vec<f64>> {
    m.forecast(history.values(), horizon)
}
