//! Aggregate 15-minute meter readings to coarser intervals and attach the
//! latest weather observation to each energy row.

use energy_forecast::series::{drop_missing, merge, resample, AggregateMode, DEFAULT_MAX_FILL};
use energy_forecast::{TimeSeries, WeatherRecord};

fn main() -> energy_forecast::Result<()> {
    // Two days of 15-minute readings with one hole.
    let mut values: Vec<f64> = (0..192).map(|i| 100.0 + (i % 96) as f64).collect();
    values[10] = f64::NAN;
    let quarter = TimeSeries::new(1_577_836_800, 900, values)?;

    for (label, secs) in [("1h", 3600), ("3h", 10_800), ("6h", 21_600), ("12h", 43_200), ("daily", 86_400)] {
        let s = resample(&quarter, secs, AggregateMode::Sum)?;
        println!("{label:>5}: {} values, {} missing, first {:?}", s.len(), s.missing_count(), s.values().first());
    }
    // 50 minutes does not tile 15-minute data.
    println!("50m: {}", resample(&quarter, 3000, AggregateMode::Sum).unwrap_err());

    let hourly = resample(&quarter, 3600, AggregateMode::Sum)?;
    let weather: Vec<WeatherRecord> = (0..48)
        .step_by(3)
        .map(|h| WeatherRecord::new(hourly.start() + h * 3600, Some(5.0 + h as f64 / 4.0), Some(70.0)))
        .collect();
    let merged = merge(&hourly, &weather, DEFAULT_MAX_FILL)?;
    println!("\nmerged columns {:?}", merged.names());
    for i in 0..6 {
        println!("  {:?}", merged.row(i));
    }

    let compact = drop_missing(&merged);
    println!("\n{} of {} rows complete; first kept positions {:?}", compact.len(), merged.len(), &compact.index[..5]);
    Ok(())
}
