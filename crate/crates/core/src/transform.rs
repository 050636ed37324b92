//! Preprocessing: lag embedding, differencing, classical additive
//! decomposition and feature standardization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{is_missing, MultiSeries, TimeSeries, MISSING};

/// Lag-embedded design matrix with next-step targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupervisedFrame {
    /// Row-major features: `p` lagged target values, oldest first, then
    /// exogenous columns at the target timestamp.
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub lag_order: usize,
    pub feature_names: Vec<String>,
    /// Source position of each target.
    pub target_positions: Vec<usize>,
}

impl SupervisedFrame {
    /// Build a frame directly from rows, e.g. for non-temporal data.
    pub fn from_rows(x: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        let width = x.first().map_or(0, Vec::len);
        if x.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument("ragged feature rows".into()));
        }
        Ok(Self {
            feature_names: (0..width).map(|j| format!("x{j}")).collect(),
            target_positions: (0..y.len()).collect(),
            lag_order: width,
            x,
            y,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.y.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }
}

/// Feature vector predicting position `t` of `target`: the `p` preceding
/// values followed by each exogenous column at `t`.
pub fn lag_features(target: &[f64], exog: &[&[f64]], t: usize, p: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(p + exog.len());
    row.extend_from_slice(&target[t - p..t]);
    row.extend(exog.iter().map(|c| c[t]));
    row
}

/// Embed `source[target]` with lag order `p`.
///
/// Every other column becomes an exogenous feature taken at the target's
/// timestamp. Windows touching a missing value are skipped, so with no
/// missing values the frame has exactly `len - p` rows.
pub fn lag_embed(source: &MultiSeries, p: usize, target: &str) -> Result<SupervisedFrame> {
    if p == 0 {
        return Err(Error::InvalidArgument("lag order must be at least 1".into()));
    }
    let n = source.len();
    if n <= p {
        return Err(Error::TooShort { needed: p + 1, got: n });
    }
    let ti = source.column_index(target)?;
    let values = &source.columns()[ti].values;
    let exog: Vec<&[f64]> = source
        .columns()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != ti)
        .map(|(_, c)| c.values.as_slice())
        .collect();

    let mut feature_names: Vec<String> = (1..=p).rev().map(|k| format!("{target}_lag{k}")).collect();
    feature_names.extend(
        source
            .columns()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != ti)
            .map(|(_, c)| c.name.clone()),
    );

    let mut x = Vec::with_capacity(n - p);
    let mut y = Vec::with_capacity(n - p);
    let mut target_positions = Vec::with_capacity(n - p);
    for t in p..n {
        let row = lag_features(values, &exog, t, p);
        if is_missing(values[t]) || row.iter().any(|v| is_missing(*v)) {
            continue;
        }
        x.push(row);
        y.push(values[t]);
        target_positions.push(t);
    }
    Ok(SupervisedFrame { x, y, lag_order: p, feature_names, target_positions })
}

pub fn lag_embed_series(s: &TimeSeries, p: usize) -> Result<SupervisedFrame> {
    lag_embed(&MultiSeries::from_series("value", s), p, "value")
}

/// `d`-times differenced series plus the values needed to undo it.
#[derive(Debug, Clone, PartialEq)]
pub struct Differenced {
    pub series: TimeSeries,
    /// `initial[j]` is the first element of the `j`-times differenced series.
    pub initial: Vec<f64>,
}

pub fn difference_values(values: &[f64], d: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if values.len() <= d {
        return Err(Error::TooShort { needed: d + 1, got: values.len() });
    }
    let mut current = values.to_vec();
    let mut initial = Vec::with_capacity(d);
    for _ in 0..d {
        initial.push(current[0]);
        current = current.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok((current, initial))
}

pub fn difference(s: &TimeSeries, d: usize) -> Result<Differenced> {
    let (values, initial) = difference_values(s.values(), d)?;
    Ok(Differenced {
        series: TimeSeries::new(s.timestamp(d), s.interval(), values)?,
        initial,
    })
}

pub fn undifference_values(diff: &[f64], initial: &[f64], d: usize) -> Result<Vec<f64>> {
    if initial.len() != d {
        return Err(Error::ArityMismatch { expected: d, got: initial.len() });
    }
    let mut current = diff.to_vec();
    for &first in initial.iter().rev() {
        let mut level = Vec::with_capacity(current.len() + 1);
        let mut acc = first;
        level.push(acc);
        for delta in &current {
            acc += delta;
            level.push(acc);
        }
        current = level;
    }
    Ok(current)
}

pub fn undifference(diff: &TimeSeries, initial: &[f64], d: usize) -> Result<TimeSeries> {
    let values = undifference_values(diff.values(), initial, d)?;
    TimeSeries::new(diff.start() - d as i64 * diff.interval(), diff.interval(), values)
}

/// Classical additive decomposition. Positions where the trend is not
/// defined hold [`MISSING`] in `trend` and `residual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub trend: Vec<f64>,
    pub seasonal: Vec<f64>,
    pub residual: Vec<f64>,
    pub period: usize,
    /// One seasonal value per phase `0..period`, summing to zero.
    pub seasonal_indices: Vec<f64>,
}

impl Decomposition {
    /// Seasonal value at any position, including ones past the fitted span.
    pub fn seasonal_at(&self, position: usize) -> f64 {
        self.seasonal_indices[position % self.period]
    }
}

/// Centered moving average of window `m`; for even `m` the 2×m average.
fn centered_moving_average(values: &[f64], m: usize) -> Vec<f64> {
    let n = values.len();
    let half = m / 2;
    let mut trend = vec![MISSING; n];
    for i in half..n.saturating_sub(half) {
        let window = &values[i - half..=i + half];
        if window.iter().any(|v| is_missing(*v)) {
            continue;
        }
        trend[i] = if m % 2 == 1 {
            window.iter().sum::<f64>() / m as f64
        } else {
            let inner: f64 = window[1..m].iter().sum();
            (0.5 * window[0] + inner + 0.5 * window[m]) / m as f64
        };
    }
    trend
}

pub fn decompose(s: &TimeSeries, period: usize) -> Result<Decomposition> {
    decompose_values(s.values(), period)
}

pub fn decompose_values(values: &[f64], period: usize) -> Result<Decomposition> {
    if period < 2 {
        return Err(Error::InvalidArgument(format!("period must be at least 2, got {period}")));
    }
    let n = values.len();
    if n < 2 * period {
        return Err(Error::TooShort { needed: 2 * period, got: n });
    }
    let trend = centered_moving_average(values, period);

    let mut sums = vec![0.0; period];
    let mut counts = vec![0usize; period];
    for (i, (&v, &t)) in values.iter().zip(&trend).enumerate() {
        if is_missing(v) || is_missing(t) {
            continue;
        }
        sums[i % period] += v - t;
        counts[i % period] += 1;
    }
    let mut indices: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| if c == 0 { 0.0 } else { s / c as f64 })
        .collect();
    let center = indices.iter().sum::<f64>() / period as f64;
    for v in &mut indices {
        *v -= center;
    }

    let seasonal: Vec<f64> = (0..n).map(|i| indices[i % period]).collect();
    let residual = values
        .iter()
        .zip(&trend)
        .zip(&seasonal)
        .map(|((&v, &t), &s)| if is_missing(t) || is_missing(v) { MISSING } else { v - t - s })
        .collect();
    Ok(Decomposition { trend, seasonal, residual, period, seasonal_indices: indices })
}

/// Smallest standard deviation a scaler will divide by.
pub const SCALE_FLOOR: f64 = 1e-12;

/// Per-feature standardization learned from training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::TooShort { needed: 1, got: 0 });
        };
        let n = rows.len() as f64;
        let width = first.len();
        let mut mean = vec![0.0; width];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut var = vec![0.0; width];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var.into_iter().map(|s| (s / n).sqrt().max(SCALE_FLOOR)).collect();
        Ok(Self { mean, std })
    }

    pub fn fit_column(values: &[f64]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        Self::fit(&rows)
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter().zip(&self.mean).zip(&self.std).map(|((v, m), s)| (v - m) / s).collect()
    }

    pub fn invert(&self, row: &[f64]) -> Vec<f64> {
        row.iter().zip(&self.mean).zip(&self.std).map(|((v, m), s)| v * s + m).collect()
    }

    pub fn apply_rows(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.apply(r)).collect()
    }

    pub fn invert_rows(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.invert(r)).collect()
    }

    /// Scalar versions for a one-column scaler (targets).
    pub fn apply_scalar(&self, v: f64) -> f64 {
        (v - self.mean[0]) / self.std[0]
    }

    pub fn invert_scalar(&self, v: f64) -> f64 {
        v * self.std[0] + self.mean[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(values: &[f64]) -> TimeSeries {
        TimeSeries::new(0, 3600, values.to_vec()).unwrap()
    }

    #[test]
    fn lag_embed_enumerates_windows() {
        let f = lag_embed_series(&ts(&[1.0, 2.0, 3.0, 4.0, 5.0]), 2).unwrap();
        assert_eq!(f.x, vec![vec![1.0, 2.0], vec![2.0, 3.0], vec![3.0, 4.0]]);
        assert_eq!(f.y, vec![3.0, 4.0, 5.0]);
        assert_eq!(f.target_positions, vec![2, 3, 4]);
        assert_eq!(f.feature_names, vec!["value_lag2", "value_lag1"]);
    }

    #[test]
    fn lag_embed_boundaries() {
        let f = lag_embed_series(&ts(&[1.0, 2.0, 3.0, 4.0]), 3).unwrap();
        assert_eq!(f.n_samples(), 1);
        assert!(matches!(
            lag_embed_series(&ts(&[1.0, 2.0]), 2),
            Err(Error::TooShort { .. })
        ));
        let c = lag_embed_series(&ts(&[7.0; 6]), 3).unwrap();
        assert!(c.x.iter().flatten().all(|&v| v == 7.0));
        assert!(c.y.iter().all(|&v| v == 7.0));
    }

    #[test]
    fn lag_embed_exogenous_and_missing() {
        use crate::series::Column;
        let m = MultiSeries::new(
            0,
            3600,
            vec![
                Column { name: "energy".into(), values: vec![1.0, 2.0, MISSING, 4.0, 5.0, 6.0] },
                Column { name: "temp".into(), values: vec![10.0, 11.0, 12.0, 13.0, 14.0, 15.0] },
            ],
        )
        .unwrap();
        let f = lag_embed(&m, 1, "energy").unwrap();
        // positions 2 (missing target) and 3 (missing lag) are skipped
        assert_eq!(f.target_positions, vec![1, 4, 5]);
        assert_eq!(f.x[0], vec![1.0, 11.0]);
        assert_eq!(f.x[1], vec![4.0, 14.0]);
        assert_eq!(f.feature_names, vec!["energy_lag1", "temp"]);
    }

    #[test]
    fn difference_examples() {
        let d = difference(&ts(&[5.0, 7.0, 4.0]), 1).unwrap();
        assert_eq!(d.series.values(), &[2.0, -3.0]);
        assert_eq!(d.initial, vec![5.0]);
        assert_eq!(d.series.start(), 3600);

        let s = ts(&[3.0, 1.0]);
        assert_eq!(difference(&s, 0).unwrap().series, s);

        let ramp = difference(&ts(&[0.0, 2.0, 4.0, 6.0]), 1).unwrap();
        assert_eq!(ramp.series.values(), &[2.0, 2.0, 2.0]);

        assert!(matches!(difference(&ts(&[1.0]), 1), Err(Error::TooShort { .. })));
    }

    #[test]
    fn undifference_examples() {
        let diff = TimeSeries::new(3600, 3600, vec![2.0, -3.0]).unwrap();
        let u = undifference(&diff, &[5.0], 1).unwrap();
        assert_eq!(u.values(), &[5.0, 7.0, 4.0]);
        assert_eq!(u.start(), 0);
        assert_eq!(undifference(&diff, &[], 0).unwrap(), diff);
        assert!(matches!(undifference(&diff, &[], 1), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn second_difference_round_trip() {
        let s = ts(&[1.0, 4.0, 9.0, 16.0, 25.0]);
        let d = difference(&s, 2).unwrap();
        assert_eq!(d.series.values(), &[2.0, 2.0, 2.0]);
        assert_eq!(undifference(&d.series, &d.initial, 2).unwrap(), s);
    }

    #[test]
    fn decompose_recovers_alternating_seasonal() {
        let values: Vec<f64> =
            (0..6).map(|i| (i + 1) as f64 + if i % 2 == 1 { 1.0 } else { 0.0 }).collect();
        let dec = decompose(&ts(&values), 2).unwrap();
        assert!(is_missing(dec.trend[0]) && is_missing(dec.trend[5]));
        assert!((dec.trend[1] - 2.5).abs() < 1e-12);
        assert!((dec.seasonal_indices[0] + 0.5).abs() < 1e-12);
        assert!((dec.seasonal_indices[1] - 0.5).abs() < 1e-12);
        for i in 1..5 {
            assert!(dec.residual[i].abs() < 1e-12);
        }
    }

    #[test]
    fn decompose_pure_periodic_and_constant() {
        let periodic: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let dec = decompose(&ts(&periodic), 2).unwrap();
        for (r, t) in dec.residual.iter().zip(&dec.trend) {
            if !is_missing(*t) {
                assert!(r.abs() < 1e-12);
            }
        }

        let dec = decompose(&ts(&[4.0; 12]), 3).unwrap();
        assert!(dec.seasonal.iter().all(|&s| s == 0.0));
        assert_eq!(dec.trend[1], 4.0);
        assert!(dec.residual[1..11].iter().all(|&r| r == 0.0));
        assert!(matches!(decompose(&ts(&[1.0; 5]), 3), Err(Error::TooShort { .. })));
        assert!(decompose(&ts(&[1.0; 5]), 1).is_err());
    }

    #[test]
    fn scaler_examples() {
        let s = Scaler::fit(&[vec![0.0], vec![2.0]]).unwrap();
        assert_eq!(s.mean, vec![1.0]);
        assert_eq!(s.std, vec![1.0]);
        assert_eq!(s.apply_rows(&[vec![0.0], vec![2.0]]), vec![vec![-1.0], vec![1.0]]);

        let c = Scaler::fit(&[vec![3.0], vec![3.0], vec![3.0]]).unwrap();
        assert_eq!(c.std, vec![SCALE_FLOOR]);
        assert!(c.apply(&[3.0])[0] == 0.0);
        assert!(Scaler::fit(&[]).is_err());
    }
}
