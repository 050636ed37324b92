//! Readers for energy and weather files, schema inference and the canonical
//! CSV writer.
//!
//! Energy files become a uniformly spaced [`TimeSeries`]: rows are sorted,
//! the modal gap becomes the interval and holes are filled with missing
//! markers. Nothing is ever interpolated.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{is_missing, MultiSeries, TimeSeries, WeatherRecord, MISSING};

/// Share of gaps that must be whole multiples of the modal interval.
pub const MIN_INTERVAL_COVERAGE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "format", rename_all = "snake_case")]
pub enum TimestampFormat {
    /// `2020-01-01T00:00:00Z`, `2020-01-01 00:00:00`, `2020-01-01T00:00:00+09:00`,
    /// `2020-01-01`, with optional fractional seconds.
    Iso8601,
    EpochSeconds,
    /// A chrono `strftime` pattern for naive local timestamps.
    Custom(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSchema {
    pub timestamp_column: String,
    pub timestamp_format: TimestampFormat,
    pub value_column: String,
    /// Free-form unit tag (`mW`, `kWh`, ...). Values are not converted.
    pub unit: String,
    pub delimiter: u8,
    pub has_header: bool,
    /// Offset of naive local timestamps from UTC, in seconds.
    pub utc_offset: i32,
}

impl DatasetSchema {
    pub fn new(timestamp_column: impl Into<String>, value_column: impl Into<String>) -> Self {
        Self {
            timestamp_column: timestamp_column.into(),
            timestamp_format: TimestampFormat::Iso8601,
            value_column: value_column.into(),
            unit: String::new(),
            delimiter: b',',
            has_header: true,
            utc_offset: 0,
        }
    }

    /// Schema of files written by [`write_canonical_csv`].
    pub fn canonical() -> Self {
        Self::new("timestamp", "value")
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(&self.timestamp_column, &self.timestamp_format, self.has_header)?;
        check_column_name(&self.value_column, self.has_header)
    }
}

fn check_column_name(name: &str, has_header: bool) -> Result<()> {
    if name.trim().is_empty() {
        return Err(Error::Config("schema column names must be non-empty".into()));
    }
    if !has_header && name.parse::<usize>().is_err() {
        return Err(Error::Config(format!(
            "without a header, columns are addressed by zero-based index, got `{name}`"
        )));
    }
    Ok(())
}

fn validate_common(ts_col: &str, format: &TimestampFormat, has_header: bool) -> Result<()> {
    check_column_name(ts_col, has_header)?;
    if let TimestampFormat::Custom(f) = format {
        // The pattern must parse what it prints.
        let example = NaiveDate::from_ymd_opt(2021, 3, 4)
            .and_then(|d| d.and_hms_opt(5, 6, 7))
            .expect("valid date");
        let mut printed = String::new();
        use std::fmt::Write as _;
        if write!(printed, "{}", example.format(f)).is_err() || parse_naive_custom(&printed, f).is_none() {
            return Err(Error::Config(format!("timestamp format `{f}` does not parse its own output")));
        }
    }
    Ok(())
}

fn parse_naive_custom(s: &str, f: &str) -> Option<NaiveDateTime> {
    NaiveDateTime::parse_from_str(s, f)
        .ok()
        .or_else(|| NaiveDate::parse_from_str(s, f).ok().and_then(|d| d.and_hms_opt(0, 0, 0)))
}

/// Parse one timestamp to UTC seconds. Naive values are shifted by `utc_offset`.
pub fn parse_timestamp(s: &str, format: &TimestampFormat, utc_offset: i32) -> Option<i64> {
    let s = s.trim();
    let naive = match format {
        TimestampFormat::EpochSeconds => {
            return s.parse::<i64>().ok().or_else(|| {
                s.parse::<f64>().ok().filter(|v| v.is_finite() && v.fract() == 0.0).map(|v| v as i64)
            })
        }
        TimestampFormat::Iso8601 => {
            if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
                return Some(dt.timestamp());
            }
            let spaced = s.replacen(' ', "T", 1);
            if let Ok(dt) = DateTime::parse_from_rfc3339(&spaced) {
                return Some(dt.timestamp());
            }
            ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%dT%H:%M"]
                .iter()
                .find_map(|f| NaiveDateTime::parse_from_str(&spaced, f).ok())
                .or_else(|| NaiveDate::parse_from_str(s, "%Y-%m-%d").ok().and_then(|d| d.and_hms_opt(0, 0, 0)))?
        }
        TimestampFormat::Custom(f) => parse_naive_custom(s, f)?,
    };
    Some(naive.and_utc().timestamp() - utc_offset as i64)
}

/// `2020-01-01T00:00:00Z`.
pub fn format_timestamp(t: i64) -> String {
    DateTime::<Utc>::from_timestamp(t, 0)
        .map(|d| d.to_rfc3339_opts(SecondsFormat::Secs, true))
        .unwrap_or_else(|| t.to_string())
}

fn parse_value(s: &str) -> Option<Option<f64>> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("nan") || s.eq_ignore_ascii_case("na") {
        return Some(None);
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite()).map(Some)
}

struct Table {
    headers: Vec<String>,
    /// `(line, fields)`
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table(path: &Path, delimiter: u8, has_header: bool) -> Result<Table> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = if has_header {
        reader.headers()?.iter().map(|h| h.trim_start_matches('\u{feff}').to_string()).collect()
    } else {
        Vec::new()
    };
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push((line, rec.iter().map(String::from).collect()));
    }
    Ok(Table { headers, rows })
}

impl Table {
    fn column(&self, path: &Path, name: &str, has_header: bool) -> Result<usize> {
        if has_header {
            self.headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::UnknownColumn(format!("{name} (in {})", path.display())))
        } else {
            name.parse::<usize>().map_err(|_| Error::UnknownColumn(name.to_string()))
        }
    }
}

fn field<'a>(path: &Path, line: usize, row: &'a [String], idx: usize) -> Result<&'a str> {
    row.get(idx).map(String::as_str).ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("row has {} fields, column {idx} missing", row.len()),
    })
}

/// Most common gap (smaller gap on ties) and the share of gaps that are
/// whole multiples of it.
pub fn modal_interval(timestamps: &[i64]) -> Option<(i64, f64)> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for w in timestamps.windows(2) {
        *counts.entry(w[1] - w[0]).or_default() += 1;
    }
    let (&mode, _) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    let total = timestamps.len() - 1;
    let covered: usize = counts.iter().filter(|(g, _)| *g % mode == 0).map(|(_, c)| c).sum();
    Some((mode, covered as f64 / total as f64))
}

/// Sort `(timestamp, line, value)` rows onto a uniform grid.
fn grid(mut rows: Vec<(i64, usize, Option<f64>)>) -> Result<TimeSeries> {
    rows.sort_by_key(|r| (r.0, r.1));
    for w in rows.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateTimestamp { timestamp: w[1].0, line: w[1].1 });
        }
    }
    if rows.len() < 2 {
        return Err(Error::TooShort { needed: 2, got: rows.len() });
    }
    let stamps: Vec<i64> = rows.iter().map(|r| r.0).collect();
    let (interval, coverage) = modal_interval(&stamps).expect("at least two rows");
    if coverage < MIN_INTERVAL_COVERAGE {
        return Err(Error::NonUniformInterval { interval, coverage: coverage * 100.0 });
    }
    let start = stamps[0];
    let span = stamps[stamps.len() - 1] - start;
    let len = (span as f64 / interval as f64).round() as usize + 1;
    let mut values = vec![MISSING; len];
    let mut filled = vec![false; len];
    for (t, line, v) in rows {
        // Off-grid rows snap to the nearest slot.
        let slot = ((t - start) as f64 / interval as f64).round() as usize;
        if filled[slot] {
            return Err(Error::DuplicateTimestamp { timestamp: start + slot as i64 * interval, line });
        }
        filled[slot] = true;
        values[slot] = v.unwrap_or(MISSING);
    }
    TimeSeries::new(start, interval, values)
}

pub fn read_energy_csv(path: impl AsRef<Path>, schema: &DatasetSchema) -> Result<TimeSeries> {
    let path = path.as_ref();
    schema.validate()?;
    let table = read_table(path, schema.delimiter, schema.has_header)?;
    let ts_idx = table.column(path, &schema.timestamp_column, schema.has_header)?;
    let val_idx = table.column(path, &schema.value_column, schema.has_header)?;
    let mut rows = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        let raw_ts = field(path, *line, row, ts_idx)?;
        let t = parse_timestamp(raw_ts, &schema.timestamp_format, schema.utc_offset).ok_or_else(|| {
            Error::Parse { path: path.to_path_buf(), line: *line, message: format!("bad timestamp `{raw_ts}`") }
        })?;
        let raw_v = field(path, *line, row, val_idx)?;
        let v = parse_value(raw_v).ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: *line,
            message: format!("bad value `{raw_v}`"),
        })?;
        rows.push((t, *line, v));
    }
    grid(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherSchema {
    pub timestamp_column: String,
    pub timestamp_format: TimestampFormat,
    pub temperature_column: Option<String>,
    pub humidity_column: Option<String>,
    /// Further numeric columns kept under their own names.
    pub extra_columns: Vec<String>,
    pub delimiter: u8,
    pub has_header: bool,
    pub utc_offset: i32,
}

impl WeatherSchema {
    /// Columns of a flat CSV export of the OpenWeatherMap history API:
    /// `dt` (epoch seconds), `temp` (°C), `humidity` (%).
    pub fn open_weather_map() -> Self {
        Self {
            timestamp_column: "dt".into(),
            timestamp_format: TimestampFormat::EpochSeconds,
            temperature_column: Some("temp".into()),
            humidity_column: Some("humidity".into()),
            extra_columns: Vec::new(),
            delimiter: b',',
            has_header: true,
            utc_offset: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(&self.timestamp_column, &self.timestamp_format, self.has_header)?;
        for c in self.temperature_column.iter().chain(&self.humidity_column).chain(&self.extra_columns) {
            check_column_name(c, self.has_header)?;
        }
        Ok(())
    }
}

fn sort_weather(mut records: Vec<(usize, WeatherRecord)>) -> Result<Vec<WeatherRecord>> {
    records.sort_by_key(|(line, r)| (r.timestamp, *line));
    for w in records.windows(2) {
        if w[0].1.timestamp == w[1].1.timestamp {
            return Err(Error::DuplicateTimestamp { timestamp: w[1].1.timestamp, line: w[1].0 });
        }
    }
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

pub fn read_weather(path: impl AsRef<Path>, schema: &WeatherSchema) -> Result<Vec<WeatherRecord>> {
    let path = path.as_ref();
    schema.validate()?;
    let table = read_table(path, schema.delimiter, schema.has_header)?;
    let ts_idx = table.column(path, &schema.timestamp_column, schema.has_header)?;
    let lookup = |c: &Option<String>| c.as_ref().map(|c| table.column(path, c, schema.has_header)).transpose();
    let temp_idx = lookup(&schema.temperature_column)?;
    let hum_idx = lookup(&schema.humidity_column)?;
    let extra_idx = schema
        .extra_columns
        .iter()
        .map(|c| Ok((c.clone(), table.column(path, c, schema.has_header)?)))
        .collect::<Result<Vec<_>>>()?;

    let numeric = |line: usize, row: &[String], idx: usize| -> Result<Option<f64>> {
        let raw = field(path, line, row, idx)?;
        parse_value(raw).ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("bad value `{raw}`"),
        })
    };

    let mut out = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        let raw_ts = field(path, *line, row, ts_idx)?;
        let timestamp = parse_timestamp(raw_ts, &schema.timestamp_format, schema.utc_offset).ok_or_else(|| {
            Error::Parse { path: path.to_path_buf(), line: *line, message: format!("bad timestamp `{raw_ts}`") }
        })?;
        let temperature = temp_idx.map(|i| numeric(*line, row, i)).transpose()?.flatten();
        let humidity = hum_idx.map(|i| numeric(*line, row, i)).transpose()?.flatten();
        let mut extra = BTreeMap::new();
        for (name, i) in &extra_idx {
            extra.insert(name.clone(), numeric(*line, row, *i)?);
        }
        out.push((*line, WeatherRecord { timestamp, temperature, humidity, extra }));
    }
    sort_weather(out)
}

#[derive(Deserialize)]
struct OwmMain {
    temp: Option<f64>,
    humidity: Option<f64>,
}

#[derive(Deserialize)]
struct OwmEntry {
    dt: i64,
    main: OwmMain,
}

/// Read the JSON layout of an OpenWeatherMap history export:
/// `[{"dt": 1577836800, "main": {"temp": 3.2, "humidity": 81}}, ...]`.
/// Other fields are ignored.
pub fn read_weather_json(path: impl AsRef<Path>) -> Result<Vec<WeatherRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let entries: Vec<OwmEntry> = serde_json::from_str(&text)?;
    let finite = |v: Option<f64>| v.filter(|x| x.is_finite());
    let records = entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| (i + 1, WeatherRecord::new(e.dt, finite(e.main.temp), finite(e.main.humidity))))
        .collect();
    sort_weather(records)
}

const DELIMITERS: [u8; 4] = *b",;\t|";
const EPOCH_NAMES: [&str; 5] = ["dt", "timestamp", "time", "epoch", "unix"];
const INFER_SAMPLE: usize = 200;

/// Best-effort schema detection from a headed file.
///
/// The delimiter is the candidate occurring most in the header line. The
/// timestamp column is the first whose sampled values all parse as ISO-8601
/// (falling back to an integer column with a conventional epoch name). The
/// value column must be the only other fully numeric column.
pub fn infer_schema(path: impl AsRef<Path>) -> Result<DatasetSchema> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let header = text.lines().next().unwrap_or("");
    let delimiter = DELIMITERS
        .iter()
        .copied()
        .max_by_key(|d| (header.bytes().filter(|b| b == d).count(), std::cmp::Reverse(*d)))
        .filter(|d| header.as_bytes().contains(d))
        .unwrap_or(b',');
    let table = read_table(path, delimiter, true)?;
    if table.rows.is_empty() {
        return Err(Error::CannotInfer { reason: "no data rows".into(), candidates: table.headers.clone() });
    }
    let sample: Vec<&Vec<String>> = table.rows.iter().take(INFER_SAMPLE).map(|(_, r)| r).collect();
    let column_all = |j: usize, pred: &dyn Fn(&str) -> bool| {
        let mut seen = false;
        for r in &sample {
            match r.get(j).map(String::as_str) {
                Some(v) if !v.is_empty() => {
                    if !pred(v) {
                        return false;
                    }
                    seen = true;
                }
                _ => {}
            }
        }
        seen
    };

    let iso = |v: &str| v.contains('-') && parse_timestamp(v, &TimestampFormat::Iso8601, 0).is_some();
    let mut ts = (0..table.headers.len())
        .find(|&j| column_all(j, &iso))
        .map(|j| (j, TimestampFormat::Iso8601));
    if ts.is_none() {
        ts = (0..table.headers.len())
            .find(|&j| {
                EPOCH_NAMES.contains(&table.headers[j].to_ascii_lowercase().as_str())
                    && column_all(j, &|v| v.parse::<i64>().is_ok())
            })
            .map(|j| (j, TimestampFormat::EpochSeconds));
    }
    let Some((ts_idx, ts_format)) = ts else {
        return Err(Error::CannotInfer {
            reason: "no column parses as a timestamp".into(),
            candidates: table.headers.clone(),
        });
    };

    // Missing markers are allowed as long as some value is a number.
    let parses = |v: &str| parse_value(v).is_some();
    let has_number = |j: usize| sample.iter().any(|r| r.get(j).is_some_and(|v| matches!(parse_value(v), Some(Some(_)))));
    let candidates: Vec<usize> = (0..table.headers.len())
        .filter(|&j| j != ts_idx && column_all(j, &parses) && has_number(j))
        .collect();
    match candidates.as_slice() {
        [v] => Ok(DatasetSchema {
            timestamp_column: table.headers[ts_idx].clone(),
            timestamp_format: ts_format,
            value_column: table.headers[*v].clone(),
            unit: String::new(),
            delimiter,
            has_header: true,
            utc_offset: 0,
        }),
        [] => Err(Error::CannotInfer { reason: "no numeric value column".into(), candidates: table.headers.clone() }),
        many => Err(Error::CannotInfer {
            reason: "several numeric columns; choose one explicitly".into(),
            candidates: many.iter().map(|&j| table.headers[j].clone()).collect(),
        }),
    }
}

pub(crate) fn format_value(v: f64) -> String {
    if is_missing(v) {
        "NaN".into()
    } else {
        format!("{v}")
    }
}

/// Canonical CSV text: header `timestamp,value`, ISO-8601 UTC, `NaN` for missing.
pub fn canonical_csv(s: &TimeSeries) -> String {
    let mut out = String::from("timestamp,value\n");
    for (i, v) in s.values().iter().enumerate() {
        out.push_str(&format_timestamp(s.timestamp(i)));
        out.push(',');
        out.push_str(&format_value(*v));
        out.push('\n');
    }
    out
}

pub fn write_canonical_csv(path: impl AsRef<Path>, s: &TimeSeries) -> Result<()> {
    write_file(path.as_ref(), &canonical_csv(s))
}

/// `timestamp` followed by one column per series column.
pub fn table_csv(m: &MultiSeries) -> String {
    let mut out = String::from("timestamp");
    for name in m.names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..m.len() {
        out.push_str(&format_timestamp(m.timestamp(i)));
        for c in m.columns() {
            out.push(',');
            out.push_str(&format_value(c.values[i]));
        }
        out.push('\n');
    }
    out
}

pub fn write_table_csv(path: impl AsRef<Path>, m: &MultiSeries) -> Result<()> {
    write_file(path.as_ref(), &table_csv(m))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn three_hourly_rows() {
        let f = file("Datetime,MW\n2020-01-01 00:00:00,1\n2020-01-01 01:00:00,2\n2020-01-01 02:00:00,3\n");
        let s = read_energy_csv(f.path(), &DatasetSchema::new("Datetime", "MW")).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.interval(), 3600);
        assert_eq!(s.start(), 1_577_836_800);
    }

    #[test]
    fn unsorted_rows_are_sorted() {
        let sorted = file("t,v\n2020-01-01T00:00:00Z,1\n2020-01-01T01:00:00Z,2\n2020-01-01T02:00:00Z,3\n");
        let shuffled = file("t,v\n2020-01-01T02:00:00Z,3\n2020-01-01T00:00:00Z,1\n2020-01-01T01:00:00Z,2\n");
        let schema = DatasetSchema::new("t", "v");
        assert_eq!(read_energy_csv(sorted.path(), &schema).unwrap(), read_energy_csv(shuffled.path(), &schema).unwrap());
    }

    #[test]
    fn gap_is_filled_with_missing() {
        let mut text = String::from("t,v\n");
        for h in (0..10).filter(|h| *h != 4) {
            text.push_str(&format!("{},{}\n", 1_600_000_000 + h * 3600, h));
        }
        let f = file(&text);
        let mut schema = DatasetSchema::new("t", "v");
        schema.timestamp_format = TimestampFormat::EpochSeconds;
        let s = read_energy_csv(f.path(), &schema).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.missing_count(), 1);
        assert!(s.values()[4].is_nan());
    }

    #[test]
    fn energy_errors() {
        let schema = DatasetSchema::new("t", "v");
        let dup = file("t,v\n2020-01-01T00:00:00Z,1\n2020-01-01T00:00:00Z,2\n");
        assert!(matches!(read_energy_csv(dup.path(), &schema), Err(Error::DuplicateTimestamp { .. })));
        let bad = file("t,v\n2020-01-01T00:00:00Z,1\nyesterday,2\n");
        match read_energy_csv(bad.path(), &schema) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let ragged = file("t,v\n0,1\n3600,2\n7200,3\n10800,4\n11800,5\n13300,6\n");
        let mut epoch = schema.clone();
        epoch.timestamp_format = TimestampFormat::EpochSeconds;
        assert!(matches!(read_energy_csv(ragged.path(), &epoch), Err(Error::NonUniformInterval { .. })));
        assert!(read_energy_csv("/nonexistent/file.csv", &schema).is_err());
    }

    #[test]
    fn offsets_and_custom_formats() {
        assert_eq!(parse_timestamp("2020-01-01T09:00:00+09:00", &TimestampFormat::Iso8601, 0), Some(1_577_836_800));
        assert_eq!(parse_timestamp("2020-01-01 09:00", &TimestampFormat::Iso8601, 9 * 3600), Some(1_577_836_800));
        let f = TimestampFormat::Custom("%d/%m/%Y %H:%M".into());
        assert_eq!(parse_timestamp("01/01/2020 00:00", &f, 0), Some(1_577_836_800));
        let mut schema = DatasetSchema::new("t", "v");
        schema.timestamp_format = TimestampFormat::Custom("%Y".into());
        assert!(schema.validate().is_err());
    }

    #[test]
    fn weather_records() {
        let f = file("dt,temp,humidity\n7200,7.5,80\n0,5,\n");
        let w = read_weather(f.path(), &WeatherSchema::open_weather_map()).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0], WeatherRecord::new(0, Some(5.0), None));
        assert_eq!(w[1], WeatherRecord::new(7200, Some(7.5), Some(80.0)));

        let bad = file("dt,temp,humidity\n0,5,1\nnoon,6,2\n");
        assert!(matches!(read_weather(bad.path(), &WeatherSchema::open_weather_map()), Err(Error::Parse { line: 3, .. })));

        let json = file(r#"[{"dt":3600,"main":{"temp":2.0,"humidity":50}},{"dt":0,"main":{"temp":1.0}}]"#);
        let w = read_weather_json(json.path()).unwrap();
        assert_eq!(w, vec![WeatherRecord::new(0, Some(1.0), None), WeatherRecord::new(3600, Some(2.0), Some(50.0))]);
    }

    #[test]
    fn schema_inference() {
        let kaggle = file(
            "Datetime,MW\n2004-12-31 01:00:00,13478\n2004-12-31 02:00:00,12865\n\
             2004-12-31 03:00:00,12577\n2004-12-31 04:00:00,12517\n",
        );
        let s = infer_schema(kaggle.path()).unwrap();
        assert_eq!((s.timestamp_column.as_str(), s.value_column.as_str()), ("Datetime", "MW"));
        assert_eq!(s.timestamp_format, TimestampFormat::Iso8601);

        let semi = file("when;load\n2020-01-01T00:00:00Z;1,5\n2020-01-01T01:00:00Z;2\n");
        assert!(matches!(infer_schema(semi.path()), Err(Error::CannotInfer { .. })));

        let text = file("a,b\nx,y\nz,w\n");
        assert!(matches!(infer_schema(text.path()), Err(Error::CannotInfer { .. })));

        let two = file("t,a,b\n2020-01-01,1,2\n2020-01-02,3,4\n");
        match infer_schema(two.path()) {
            Err(Error::CannotInfer { candidates, .. }) => assert_eq!(candidates, vec!["a", "b"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_round_trip() {
        let s = TimeSeries::new(1_600_000_000, 900, vec![1.5, MISSING, 0.1 + 0.2, -3e-9]).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_canonical_csv(f.path(), &s).unwrap();
        let back = read_energy_csv(f.path(), &DatasetSchema::canonical()).unwrap();
        assert_eq!(back.start(), s.start());
        assert_eq!(back.interval(), s.interval());
        assert_eq!(back.values()[0].to_bits(), s.values()[0].to_bits());
        assert!(back.values()[1].is_nan());
        assert_eq!(&back.values()[2..], &s.values()[2..]);
        assert!(canonical_csv(&s).starts_with("timestamp,value\n2020-09-13T12:26:40Z,1.5\n"));
    }
}
