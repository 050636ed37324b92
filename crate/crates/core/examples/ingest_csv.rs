//! Read a Kaggle-style CSV with an inferred schema, then write and re-read
//! the canonical form.

use energy_forecast::ingest::{infer_schema, read_energy_csv, read_weather_json, write_canonical_csv, DatasetSchema};

fn main() -> energy_forecast::Result<()> {
    let dir = std::env::temp_dir().join("energy_forecast_ingest_example");
    std::fs::create_dir_all(&dir).map_err(|e| energy_forecast::Error::InvalidArgument(e.to_string()))?;
    let raw = dir.join("AEP_hourly.csv");
    // Out of order, with 03:00 absent.
    let text = "Datetime,AEP_MW\n2004-12-31 02:00:00,12865\n2004-12-31 01:00:00,13478\n\
                2004-12-31 04:00:00,12517\n2004-12-31 05:00:00,NaN\n2004-12-31 06:00:00,12670\n";
    std::fs::write(&raw, text).map_err(|e| energy_forecast::Error::InvalidArgument(e.to_string()))?;

    let schema = infer_schema(&raw)?;
    println!("inferred: timestamp `{}` ({:?}), value `{}`", schema.timestamp_column, schema.timestamp_format, schema.value_column);
    let s = read_energy_csv(&raw, &schema)?;
    println!("{} slots at {}s, {} missing: {:?}", s.len(), s.interval(), s.missing_count(), s.values());

    let canonical = dir.join("canonical.csv");
    write_canonical_csv(&canonical, &s)?;
    print!("{}", std::fs::read_to_string(&canonical).unwrap_or_default());
    let back = read_energy_csv(&canonical, &DatasetSchema::canonical())?;
    println!("round trip identical: {}", back.values().iter().zip(s.values()).all(|(a, b)| a.to_bits() == b.to_bits()));

    let owm = dir.join("weather.json");
    std::fs::write(&owm, r#"[{"dt":1104458400,"main":{"temp":-1.5,"humidity":88}},{"dt":1104454800,"main":{"temp":-1.0}}]"#)
        .map_err(|e| energy_forecast::Error::InvalidArgument(e.to_string()))?;
    for rec in read_weather_json(&owm)? {
        println!("weather {} temp {:?} humidity {:?}", rec.timestamp, rec.temperature, rec.humidity);
    }
    Ok(())
}
