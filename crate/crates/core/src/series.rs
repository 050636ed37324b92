//! Uniformly spaced series, interval resampling and energy/weather alignment.
//!
//! Timestamps are UTC seconds and implicit: observation `i` sits at
//! `start + i * interval`. Missing observations are stored as `NaN`
//! ([`MISSING`]); every other value must be finite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker stored in place of a missing observation.
pub const MISSING: f64 = f64::NAN;

/// Default number of intervals a weather observation is carried forward.
pub const DEFAULT_MAX_FILL: usize = 2;

#[inline]
pub fn is_missing(v: f64) -> bool {
    v.is_nan()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    start: i64,
    interval: i64,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(start: i64, interval: i64, values: Vec<f64>) -> Result<Self> {
        if interval <= 0 {
            return Err(Error::InvalidArgument(format!(
                "interval must be positive, got {interval}"
            )));
        }
        if let Some(i) = values.iter().position(|v| v.is_infinite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite value at position {i}"
            )));
        }
        Ok(Self { start, interval, values })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn interval(&self) -> i64 {
        self.interval
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn timestamp(&self, i: usize) -> i64 {
        self.start + i as i64 * self.interval
    }

    /// Timestamp one interval past the last observation.
    pub fn end(&self) -> i64 {
        self.timestamp(self.len())
    }

    pub fn missing_count(&self) -> usize {
        self.values.iter().filter(|v| is_missing(**v)).count()
    }

    /// Sub-series of positions `range`, keeping timestamps aligned.
    pub fn slice(&self, range: std::ops::Range<usize>) -> TimeSeries {
        TimeSeries {
            start: self.timestamp(range.start),
            interval: self.interval,
            values: self.values[range].to_vec(),
        }
    }
}

/// How the values inside one resampling window are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateMode {
    Sum,
    Mean,
}

impl std::str::FromStr for AggregateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(AggregateMode::Sum),
            "mean" => Ok(AggregateMode::Mean),
            other => Err(Error::Config(format!("unknown aggregation mode `{other}`"))),
        }
    }
}

fn window_factor(interval: i64, target_interval: i64) -> Result<usize> {
    if target_interval <= 0 || target_interval % interval != 0 {
        return Err(Error::NotAMultiple { target: target_interval, source_interval: interval });
    }
    Ok((target_interval / interval) as usize)
}

fn aggregate(values: &[f64], k: usize, mode: AggregateMode) -> Vec<f64> {
    values
        .chunks_exact(k)
        .map(|window| {
            if window.iter().any(|v| is_missing(*v)) {
                return MISSING;
            }
            let total: f64 = window.iter().sum();
            match mode {
                AggregateMode::Sum => total,
                AggregateMode::Mean => total / k as f64,
            }
        })
        .collect()
}

/// Aggregate into windows of `target_interval` seconds.
///
/// Windows containing a missing value are missing, and a trailing partial
/// window is dropped.
pub fn resample(s: &TimeSeries, target_interval: i64, mode: AggregateMode) -> Result<TimeSeries> {
    let k = window_factor(s.interval, target_interval)?;
    Ok(TimeSeries {
        start: s.start,
        interval: target_interval,
        values: aggregate(&s.values, k, mode),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// Several variables sharing one timestamp grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSeries {
    start: i64,
    interval: i64,
    columns: Vec<Column>,
}

impl MultiSeries {
    pub fn new(start: i64, interval: i64, columns: Vec<Column>) -> Result<Self> {
        if interval <= 0 {
            return Err(Error::InvalidArgument(format!(
                "interval must be positive, got {interval}"
            )));
        }
        if let Some(first) = columns.first() {
            let len = first.values.len();
            for c in &columns {
                if c.values.len() != len {
                    return Err(Error::LengthMismatch { left: len, right: c.values.len() });
                }
            }
        }
        for (i, c) in columns.iter().enumerate() {
            if c.name.is_empty() {
                return Err(Error::InvalidArgument("column names must be non-empty".into()));
            }
            if columns[..i].iter().any(|o| o.name == c.name) {
                return Err(Error::InvalidArgument(format!("duplicate column `{}`", c.name)));
            }
            if c.values.iter().any(|v| v.is_infinite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-finite value in column `{}`",
                    c.name
                )));
            }
        }
        Ok(Self { start, interval, columns })
    }

    pub fn from_series(name: &str, s: &TimeSeries) -> Self {
        Self {
            start: s.start,
            interval: s.interval,
            columns: vec![Column { name: name.to_string(), values: s.values.clone() }],
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn interval(&self) -> i64 {
        self.interval
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn timestamp(&self, i: usize) -> i64 {
        self.start + i as i64 * self.interval
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        Ok(&self.columns[self.column_index(name)?].values)
    }

    pub fn series(&self, name: &str) -> Result<TimeSeries> {
        Ok(TimeSeries {
            start: self.start,
            interval: self.interval,
            values: self.column(name)?.to_vec(),
        })
    }

    /// Row `i` across all columns, in column order.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c.values[i]).collect()
    }

    pub fn row_has_missing(&self, i: usize) -> bool {
        self.columns.iter().any(|c| is_missing(c.values[i]))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> MultiSeries {
        MultiSeries {
            start: self.timestamp(range.start),
            interval: self.interval,
            columns: self
                .columns
                .iter()
                .map(|c| Column { name: c.name.clone(), values: c.values[range.clone()].to_vec() })
                .collect(),
        }
    }

    /// Same grid, column values replaced by `f(name, values)`.
    pub fn map_columns(&self, mut f: impl FnMut(&str, &[f64]) -> Vec<f64>) -> Result<MultiSeries> {
        let columns = self
            .columns
            .iter()
            .map(|c| Column { name: c.name.clone(), values: f(&c.name, &c.values) })
            .collect();
        MultiSeries::new(self.start, self.interval, columns)
    }

    pub fn with_start(mut self, start: i64) -> Self {
        self.start = start;
        self
    }
}

/// Resample every column, choosing the aggregation per column name.
pub fn resample_multi(
    m: &MultiSeries,
    target_interval: i64,
    mode_for: impl Fn(&str) -> AggregateMode,
) -> Result<MultiSeries> {
    let k = window_factor(m.interval, target_interval)?;
    let columns = m
        .columns
        .iter()
        .map(|c| Column { name: c.name.clone(), values: aggregate(&c.values, k, mode_for(&c.name)) })
        .collect();
    Ok(MultiSeries { start: m.start, interval: target_interval, columns })
}

/// One weather observation. Absent fields are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherRecord {
    pub timestamp: i64,
    pub temperature: Option<f64>,
    pub humidity: Option<f64>,
    #[serde(default)]
    pub extra: BTreeMap<String, Option<f64>>,
}

impl WeatherRecord {
    pub fn new(timestamp: i64, temperature: Option<f64>, humidity: Option<f64>) -> Self {
        Self { timestamp, temperature, humidity, extra: BTreeMap::new() }
    }
}

pub const ENERGY: &str = "energy";
pub const TEMPERATURE: &str = "temperature";
pub const HUMIDITY: &str = "humidity";

/// Attach to each energy timestamp the latest weather record at or before
/// it, provided it is no older than `max_fill` intervals.
///
/// The output has columns `energy`, `temperature`, `humidity` followed by
/// any extra weather fields in name order.
pub fn merge(energy: &TimeSeries, weather: &[WeatherRecord], max_fill: usize) -> Result<MultiSeries> {
    for pair in weather.windows(2) {
        if pair[1].timestamp < pair[0].timestamp {
            return Err(Error::UnsortedWeather {
                previous: pair[0].timestamp,
                next: pair[1].timestamp,
            });
        }
    }
    let extra_names: Vec<String> = {
        let mut names: Vec<String> =
            weather.iter().flat_map(|r| r.extra.keys().cloned()).collect();
        names.sort();
        names.dedup();
        names
    };

    let n = energy.len();
    let reach = max_fill as i64 * energy.interval;
    let mut temperature = vec![MISSING; n];
    let mut humidity = vec![MISSING; n];
    let mut extras = vec![vec![MISSING; n]; extra_names.len()];

    // Index of the first record strictly after the current timestamp.
    let mut next = 0usize;
    for i in 0..n {
        let t = energy.timestamp(i);
        while next < weather.len() && weather[next].timestamp <= t {
            next += 1;
        }
        if next == 0 {
            continue;
        }
        let rec = &weather[next - 1];
        if t - rec.timestamp > reach {
            continue;
        }
        temperature[i] = rec.temperature.unwrap_or(MISSING);
        humidity[i] = rec.humidity.unwrap_or(MISSING);
        for (slot, name) in extras.iter_mut().zip(&extra_names) {
            slot[i] = rec.extra.get(name).copied().flatten().unwrap_or(MISSING);
        }
    }

    let mut columns = vec![
        Column { name: ENERGY.into(), values: energy.values.clone() },
        Column { name: TEMPERATURE.into(), values: temperature },
        Column { name: HUMIDITY.into(), values: humidity },
    ];
    columns.extend(
        extra_names.into_iter().zip(extras).map(|(name, values)| Column { name, values }),
    );
    MultiSeries::new(energy.start, energy.interval, columns)
}

/// Rows that survived [`drop_missing`], with their original positions.
///
/// The surviving rows are no longer uniformly spaced; `index` is the only
/// reliable way to tell which rows were adjacent in the source.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactRows {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub index: Vec<usize>,
    pub start: i64,
    pub interval: i64,
}

impl CompactRows {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn timestamp(&self, row: usize) -> i64 {
        self.start + self.index[row] as i64 * self.interval
    }

    /// Whether compact rows `row` and `row + 1` were adjacent in the source.
    pub fn contiguous(&self, row: usize) -> bool {
        self.index[row + 1] == self.index[row] + 1
    }
}

pub fn drop_missing(m: &MultiSeries) -> CompactRows {
    let index: Vec<usize> = (0..m.len()).filter(|&i| !m.row_has_missing(i)).collect();
    CompactRows {
        names: m.columns.iter().map(|c| c.name.clone()).collect(),
        columns: m
            .columns
            .iter()
            .map(|c| index.iter().map(|&i| c.values[i]).collect())
            .collect(),
        index,
        start: m.start,
        interval: m.interval,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(interval: i64, values: &[f64]) -> TimeSeries {
        TimeSeries::new(0, interval, values.to_vec()).unwrap()
    }

    #[test]
    fn resample_sums_one_hour_window() {
        let s = ts(900, &[100.0, 200.0, 300.0, 400.0]);
        let r = resample(&s, 3600, AggregateMode::Sum).unwrap();
        assert_eq!(r.values(), &[1000.0]);
        assert_eq!(r.interval(), 3600);
        assert_eq!(r.start(), 0);
    }

    #[test]
    fn resample_mean_per_window() {
        let s = ts(900, &[1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]);
        let r = resample(&s, 3600, AggregateMode::Mean).unwrap();
        assert_eq!(r.values(), &[1.0, 2.0]);
    }

    #[test]
    fn resample_identity_and_errors() {
        let s = ts(900, &[1.0, 5.0, 3.0]);
        assert_eq!(resample(&s, 900, AggregateMode::Sum).unwrap(), s);
        assert!(matches!(
            resample(&s, 3000, AggregateMode::Sum),
            Err(Error::NotAMultiple { .. })
        ));
        let empty = ts(900, &[]);
        assert!(resample(&empty, 3600, AggregateMode::Sum).unwrap().is_empty());
    }

    #[test]
    fn resample_propagates_missing_and_drops_partial() {
        let s = ts(900, &[1.0, MISSING, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0, 9.0]);
        let r = resample(&s, 3600, AggregateMode::Sum).unwrap();
        assert_eq!(r.len(), 2);
        assert!(is_missing(r.values()[0]));
        assert_eq!(r.values()[1], 8.0);
    }

    #[test]
    fn merge_carries_weather_forward() {
        let energy = ts(3600, &[1.0, 2.0, 3.0]);
        let weather = vec![
            WeatherRecord::new(0, Some(5.0), Some(40.0)),
            WeatherRecord::new(7200, Some(7.0), None),
        ];
        let m = merge(&energy, &weather, 1).unwrap();
        assert_eq!(m.column(TEMPERATURE).unwrap(), &[5.0, 5.0, 7.0]);
        let hum = m.column(HUMIDITY).unwrap();
        assert_eq!(&hum[..2], &[40.0, 40.0]);
        assert!(is_missing(hum[2]));
        assert_eq!(m.column(ENERGY).unwrap(), energy.values());
    }

    #[test]
    fn merge_respects_max_fill() {
        let energy = ts(3600, &[1.0, 2.0, 3.0, 4.0]);
        let weather = vec![WeatherRecord::new(0, Some(5.0), None)];
        let m = merge(&energy, &weather, 2).unwrap();
        let t = m.column(TEMPERATURE).unwrap();
        assert_eq!(&t[..3], &[5.0, 5.0, 5.0]);
        assert!(is_missing(t[3]));
    }

    #[test]
    fn merge_empty_weather_is_all_missing() {
        let energy = ts(3600, &[1.0, 2.0]);
        let m = merge(&energy, &[], 2).unwrap();
        assert!(m.column(TEMPERATURE).unwrap().iter().all(|v| is_missing(*v)));
        assert!(m.column(HUMIDITY).unwrap().iter().all(|v| is_missing(*v)));
    }

    #[test]
    fn merge_exact_alignment_and_extras() {
        let energy = ts(3600, &[1.0, 2.0]);
        let mut a = WeatherRecord::new(0, Some(1.0), Some(10.0));
        a.extra.insert("wind".into(), Some(3.0));
        let b = WeatherRecord::new(3600, Some(2.0), Some(20.0));
        let m = merge(&energy, &[a, b], 0).unwrap();
        assert_eq!(m.names(), vec!["energy", "temperature", "humidity", "wind"]);
        assert_eq!(m.column(TEMPERATURE).unwrap(), &[1.0, 2.0]);
        let wind = m.column("wind").unwrap();
        assert_eq!(wind[0], 3.0);
        assert!(is_missing(wind[1]));
    }

    #[test]
    fn merge_rejects_unsorted_weather() {
        let energy = ts(3600, &[1.0]);
        let weather =
            vec![WeatherRecord::new(3600, Some(1.0), None), WeatherRecord::new(0, Some(1.0), None)];
        assert!(matches!(merge(&energy, &weather, 1), Err(Error::UnsortedWeather { .. })));
    }

    #[test]
    fn drop_missing_maps_rows() {
        let m = MultiSeries::new(
            0,
            60,
            vec![
                Column { name: "a".into(), values: vec![1.0, 2.0, 3.0] },
                Column { name: "b".into(), values: vec![1.0, MISSING, 3.0] },
            ],
        )
        .unwrap();
        let c = drop_missing(&m);
        assert_eq!(c.index, vec![0, 2]);
        assert_eq!(c.columns[0], vec![1.0, 3.0]);
        assert!(!c.contiguous(0));
        assert_eq!(c.timestamp(1), 120);

        let clean = m.slice(0..1);
        let c = drop_missing(&clean);
        assert_eq!(c.index, vec![0]);

        let all_missing = MultiSeries::new(
            0,
            60,
            vec![Column { name: "a".into(), values: vec![MISSING, MISSING] }],
        )
        .unwrap();
        assert!(drop_missing(&all_missing).is_empty());
    }

    #[test]
    fn multiseries_validation() {
        let bad = MultiSeries::new(
            0,
            60,
            vec![
                Column { name: "a".into(), values: vec![1.0] },
                Column { name: "a".into(), values: vec![1.0] },
            ],
        );
        assert!(bad.is_err());
        let ragged = MultiSeries::new(
            0,
            60,
            vec![
                Column { name: "a".into(), values: vec![1.0] },
                Column { name: "b".into(), values: vec![] },
            ],
        );
        assert!(matches!(ragged, Err(Error::LengthMismatch { .. })));
        assert!(TimeSeries::new(0, 0, vec![]).is_err());
        assert!(TimeSeries::new(0, 1, vec![f64::INFINITY]).is_err());
    }
}
