//! One model, one dataset: split-size sweep with each preprocessing method
//! in one-step and recursive mode.

use energy_forecast::evaluation::{evaluate, Dataset, EvalSpec, ModelKind, ModelSpec, Preprocess, SplitSpec};
use energy_forecast::regressors::ForecastMode;
use energy_forecast::series::ENERGY;
use energy_forecast::{synthetic, MultiSeries};

fn main() -> energy_forecast::Result<()> {
    let ds = Dataset::new("synthetic", MultiSeries::from_series(ENERGY, &synthetic::energy_hourly(1200, 9)), ENERGY)?;
    let model = ModelSpec::new(ModelKind::Ols);
    println!("{:<16} {:<10} {:>5} {:>8} {:>8}", "preprocess", "mode", "split", "MAE", "RAE");
    for preprocess in [Preprocess::Lags, Preprocess::Difference, Preprocess::Deseasonalize { period: 24 }] {
        for mode in [ForecastMode::OneStep, ForecastMode::Recursive] {
            for split in [0.6, 0.7, 0.8] {
                let spec = EvalSpec { horizon: Some(24), mode, preprocess, ..EvalSpec::default() };
                let r = evaluate(&model, &ds, SplitSpec::new(split)?, &spec)?;
                println!(
                    "{:<16} {:<10} {:>5} {:>8.0} {:>8.3}",
                    format!("{preprocess:?}").split(' ').next().unwrap_or(""),
                    mode.to_string(),
                    split,
                    r.mae.unwrap_or(f64::NAN),
                    r.rae.unwrap_or(f64::NAN)
                );
            }
        }
    }
    Ok(())
}
