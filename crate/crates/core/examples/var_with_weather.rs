//! Day-ahead VAR on hourly energy and temperature, with AIC lag selection.

use energy_forecast::series::{Column, ENERGY, TEMPERATURE};
use energy_forecast::synthetic;
use energy_forecast::var::{select_var_order, var_fit, var_forecast};
use energy_forecast::MultiSeries;

fn main() -> energy_forecast::Result<()> {
    let household = synthetic::household_hourly(24 * 60, 3);
    let pick = |name: &str| Column { name: name.into(), values: household.column(name).unwrap().to_vec() };
    let m = MultiSeries::new(household.start(), household.interval(), vec![pick(ENERGY), pick(TEMPERATURE)])?;

    let n_train = m.len() - 24;
    let train = m.slice(0..n_train);
    let p = select_var_order(&train, 26)?;
    println!("AIC-selected lag order: {p}");
    let model = var_fit(&train, p)?;
    println!("effective sample {}, AIC {:.3}", model.n_effective, model.aic());

    let forecast = var_forecast(&model, &train, 24)?;
    let actual = m.column(ENERGY)?;
    let mae = forecast.iter().enumerate().map(|(h, row)| (row[0] - actual[n_train + h]).abs()).sum::<f64>() / 24.0;
    println!("day-ahead energy MAE {mae:.0}");
    for h in [0, 6, 12, 18, 23] {
        println!("  +{:>2}h energy {:>8.0} (actual {:>8.0}), temperature {:>5.2}", h + 1, forecast[h][0], actual[n_train + h], forecast[h][1]);
    }
    Ok(())
}
