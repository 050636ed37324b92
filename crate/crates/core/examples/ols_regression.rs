//! Ordinary least squares on lagged values.

use energy_forecast::regressors::{ForecastMode, OlsModel, Regressor};
use energy_forecast::synthetic;
use energy_forecast::transform::lag_embed_series;
use energy_forecast::SupervisedFrame;

fn main() -> energy_forecast::Result<()> {
    let toy = SupervisedFrame::from_rows(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1.0, 3.0, 4.0])?;
    let m = OlsModel::fit(&toy)?;
    println!("y = {:.6} + {:.6}·x  (hand solution 7/6 + 1.5x)", m.intercept, m.coefficients[0]);

    let s = synthetic::energy_hourly(1000, 5);
    let (train, test) = s.values().split_at(800);
    let train_series = energy_forecast::TimeSeries::new(s.start(), s.interval(), train.to_vec())?;
    let model = OlsModel::fit(&lag_embed_series(&train_series, 24)?)?;
    let one_step = model.predict_series(s.values(), 24, test.len(), ForecastMode::OneStep)?;
    let mae: f64 = one_step.iter().zip(test).map(|(p, a)| (p - a).abs()).sum::<f64>() / test.len() as f64;
    println!("lag-24 OLS one-step MAE on 200 held-out hours: {mae:.0}");
    let recursive = model.predict_series(train, 24, 24, ForecastMode::Recursive)?;
    println!("recursive day-ahead: first {:.0}, last {:.0}", recursive[0], recursive[23]);
    Ok(())
}
