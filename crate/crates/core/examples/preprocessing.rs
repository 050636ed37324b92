//! The three preprocessing methods: lag embedding, first differencing with
//! exact inversion, and classical additive decomposition; plus scaling.

use energy_forecast::synthetic;
use energy_forecast::transform::{decompose, difference, lag_embed_series, undifference, Scaler};

fn main() -> energy_forecast::Result<()> {
    let s = synthetic::energy_hourly(24 * 14, 1);

    let frame = lag_embed_series(&s, 24)?;
    println!("lag embedding: {} samples × {} features", frame.n_samples(), frame.n_features());
    println!("  features {:?} ... {:?}", &frame.feature_names[..2], frame.feature_names.last());

    let diff = difference(&s, 1)?;
    let back = undifference(&diff.series, &diff.initial, 1)?;
    let max_err = s.values().iter().zip(back.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("difference d=1: {} values, round-trip max error {max_err:e}", diff.series.len());

    let dec = decompose(&s, 24)?;
    let sum: f64 = dec.seasonal_indices.iter().sum();
    println!("decomposition: seasonal indices sum to {sum:.3e}");
    println!("  peak hour {:?}", dec.seasonal_indices.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(h, _)| h));
    let defined = dec.trend.iter().filter(|t| t.is_finite()).count();
    println!("  trend defined at {defined}/{} positions", s.len());

    let scaler = Scaler::fit(&frame.x)?;
    let z = scaler.apply_rows(&frame.x);
    let col0: Vec<f64> = z.iter().map(|r| r[0]).collect();
    let mean = col0.iter().sum::<f64>() / col0.len() as f64;
    println!("scaler: standardized lag-1 mean {mean:.2e}");
    Ok(())
}
