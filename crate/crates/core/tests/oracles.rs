mod common;

use energy_forecast::arima::{arima_fit, ArimaOrder};
use energy_forecast::evaluation::{Benchmark, Dataset, EvalSpec, ModelKind, ModelSpec};
use energy_forecast::series::{Column, ENERGY};
use energy_forecast::var::{select_var_order, var_fit};
use energy_forecast::{synthetic, MultiSeries, TimeSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn noisy_var1(n: usize, seed: u64) -> MultiSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let mut rows = vec![[0.0, 0.0]];
    for t in 1..n {
        let y = rows[t - 1];
        rows.push([
            1.0 + 0.6 * y[0] + 0.2 * y[1] + noise.sample(&mut rng),
            -0.5 + 0.1 * y[0] + 0.4 * y[1] + noise.sample(&mut rng),
        ]);
    }
    MultiSeries::new(
        0,
        3600,
        vec![
            Column { name: "a".into(), values: rows.iter().map(|r| r[0]).collect() },
            Column { name: "b".into(), values: rows.iter().map(|r| r[1]).collect() },
        ],
    )
    .unwrap()
}

#[test]
fn univariate_var_matches_autoregression() {
    let s = TimeSeries::new(0, 3600, synthetic::ar1(400, 2.0, 0.7, 1.0, 11)).unwrap();
    let v = var_fit(&MultiSeries::from_series("x", &s), 2).unwrap();
    let a = arima_fit(&s, ArimaOrder::new(2, 0, 0)).unwrap();
    assert!((v.intercept[0] - a.intercept).abs() < 1e-6, "{} vs {}", v.intercept[0], a.intercept);
    for lag in 0..2 {
        assert!((v.coefficients[lag][0][0] - a.ar[lag]).abs() < 1e-6);
    }
}

#[test]
fn two_step_forecast_follows_the_recursion() {
    let m = noisy_var1(300, 3);
    let v = var_fit(&m, 1).unwrap();
    let last = m.row(m.len() - 1);
    let (c, a) = (&v.intercept, &v.coefficients[0]);
    let step = |y: &[f64]| -> Vec<f64> { (0..2).map(|r| c[r] + a[r][0] * y[0] + a[r][1] * y[1]).collect() };
    let one = step(&last);
    let two = step(&one);
    let got = v.forecast_rows(&[last], 2).unwrap();
    for (g, w) in got.iter().flatten().zip(one.iter().chain(&two)) {
        assert!((g - w).abs() < 1e-12);
    }
}

#[test]
fn order_selection_finds_one_lag() {
    assert_eq!(select_var_order(&noisy_var1(2000, 5), 6).unwrap(), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let white: Vec<Column> = ["a", "b"]
        .iter()
        .map(|n| Column { name: (*n).into(), values: (0..2000).map(|_| noise.sample(&mut rng)).collect() })
        .collect();
    assert_eq!(select_var_order(&MultiSeries::new(0, 3600, white).unwrap(), 6).unwrap(), 1);
}

fn dataset() -> Dataset {
    let e = synthetic::energy_hourly(600, 17);
    Dataset::new("synthetic", MultiSeries::from_series(ENERGY, &e), ENERGY).unwrap()
}

#[test]
fn duplicate_models_score_identically_and_the_mean_ranks_last() {
    let plan = Benchmark::new(
        vec![ModelSpec::new(ModelKind::Mean), ModelSpec::new(ModelKind::Ols), ModelSpec::new(ModelKind::Ols)],
        vec![dataset()],
        vec![0.7, 0.8],
        EvalSpec::default(),
    );
    let report = plan.run().unwrap();
    let by = |idx: usize| report.records.iter().filter(move |r| r.model_index == idx);
    for (a, b) in by(1).zip(by(2)) {
        assert_eq!((a.rmse, a.mae, a.rae), (b.rmse, b.mae, b.rae));
    }
    for r in by(0) {
        assert!((r.rae.unwrap() - 1.0).abs() < 1e-12);
    }
    let overall = &report.ranking.overall;
    assert_eq!(overall.last().unwrap().model_index, 0);
    // Equal scores keep registration order.
    assert_eq!((overall[0].model_index, overall[1].model_index), (1, 2));
}

#[test]
fn noise_in_the_inputs_makes_a_model_worse() {
    let clean = dataset();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let noise = Normal::new(0.0, 2e5).unwrap();
    let values: Vec<f64> = clean.series.column(ENERGY).unwrap().iter().map(|v| v + noise.sample(&mut rng)).collect();
    let noisy = Dataset::new("noisy", MultiSeries::from_series(ENERGY, &TimeSeries::new(0, 3600, values).unwrap()), ENERGY).unwrap();
    let plan = Benchmark::new(vec![ModelSpec::new(ModelKind::Ols)], vec![clean, noisy], vec![0.7], EvalSpec::default());
    let report = plan.run().unwrap();
    let rae = |ds: &str| report.records.iter().find(|r| r.dataset == ds).unwrap().rae.unwrap();
    assert!(rae("synthetic") < rae("noisy"));
}
