//! ARIMA(p, d, q) by conditional sum of squares, with Hannan–Rissanen
//! starting values.

use energy_forecast::arima::{arima_fit, arima_forecast, ArimaOrder};
use energy_forecast::{synthetic, TimeSeries};

fn main() -> energy_forecast::Result<()> {
    let ar = TimeSeries::new(0, 3600, synthetic::ar1(3000, 1.0, 0.5, 1.0, 11))?;
    let m = arima_fit(&ar, ArimaOrder::new(1, 0, 0))?;
    println!("AR(1): c = {:.4}, φ = {:.4}, σ² = {:.4}", m.intercept, m.ar[0], m.residual_variance);

    let ma = TimeSeries::new(0, 3600, synthetic::ma1(3000, 0.0, 0.4, 1.0, 12))?;
    let m = arima_fit(&ma, ArimaOrder::new(0, 0, 1))?;
    println!("MA(1): θ = {:.4} (start {:.4}), CSS {:.2}", m.ma[0], m.initializer[1], m.css);

    let ramp: Vec<f64> = (0..60).map(|t| 3.0 * t as f64 + synthetic::ar1(60, 0.0, 0.3, 0.5, 13)[t]).collect();
    let ramp = TimeSeries::new(0, 3600, ramp)?;
    let m = arima_fit(&ramp, ArimaOrder::new(1, 1, 0))?;
    let f = arima_forecast(&m, &ramp, 6)?;
    println!("ARIMA(1,1,0) on a ramp: drift {:.3}, next 6 {:?}", m.intercept, f.iter().map(|v| v.round()).collect::<Vec<_>>());
    println!("stationary AR part: {}", m.stationary);
    Ok(())
}
