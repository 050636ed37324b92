//! Seeded synthetic series for examples, tests and benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::series::{Column, MultiSeries, TimeSeries, ENERGY, HUMIDITY, TEMPERATURE};

/// 2020-01-01T00:00:00Z.
pub const DEFAULT_START: i64 = 1_577_836_800;

#[derive(Debug, Clone, PartialEq)]
pub struct HouseholdParams {
    pub base: f64,
    pub daily_amplitude: f64,
    /// AR(1) coefficient of the consumption noise.
    pub noise_ar: f64,
    pub noise_sd: f64,
    /// Added consumption per °C below the mean temperature.
    pub heating_per_degree: f64,
}

impl Default for HouseholdParams {
    fn default() -> Self {
        Self { base: 400_000.0, daily_amplitude: 150_000.0, noise_ar: 0.6, noise_sd: 30_000.0, heating_per_degree: 4_000.0 }
    }
}

/// Hourly `energy`, `temperature` and `humidity` columns with a daily cycle.
pub fn household_hourly(n: usize, seed: u64) -> MultiSeries {
    household_with(n, seed, &HouseholdParams::default())
}

pub fn household_with(n: usize, seed: u64, p: &HouseholdParams) -> MultiSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shock = Normal::new(0.0, p.noise_sd).expect("finite sd");
    let unit = Normal::new(0.0, 1.0).expect("finite sd");
    let day = 2.0 * std::f64::consts::PI / 24.0;
    let mut noise = 0.0;
    let mut energy = Vec::with_capacity(n);
    let mut temperature = Vec::with_capacity(n);
    let mut humidity = Vec::with_capacity(n);
    for t in 0..n {
        let phase = day * t as f64;
        let temp = 10.0 + 5.0 * (phase - std::f64::consts::FRAC_PI_2).sin() + unit.sample(&mut rng);
        let hum = 65.0 + 10.0 * phase.cos() + 2.0 * unit.sample(&mut rng);
        noise = p.noise_ar * noise + shock.sample(&mut rng);
        energy.push(p.base + p.daily_amplitude * phase.sin() + p.heating_per_degree * (10.0 - temp) + noise);
        temperature.push(temp);
        humidity.push(hum.clamp(0.0, 100.0));
    }
    MultiSeries::new(
        DEFAULT_START,
        3600,
        vec![
            Column { name: ENERGY.into(), values: energy },
            Column { name: TEMPERATURE.into(), values: temperature },
            Column { name: HUMIDITY.into(), values: humidity },
        ],
    )
    .expect("finite synthetic values")
}

/// Energy column of [`household_hourly`] as a univariate series.
pub fn energy_hourly(n: usize, seed: u64) -> TimeSeries {
    household_hourly(n, seed).series(ENERGY).expect("energy column")
}

/// `x_t = c + φ x_{t−1} + e_t` with Gaussian shocks, after a burn-in of 200.
pub fn ar1(n: usize, c: f64, phi: f64, sd: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shock = Normal::new(0.0, sd).expect("finite sd");
    let mut x = if (1.0 - phi).abs() > 1e-12 { c / (1.0 - phi) } else { 0.0 };
    let mut out = Vec::with_capacity(n);
    for t in 0..n + 200 {
        x = c + phi * x + shock.sample(&mut rng);
        if t >= 200 {
            out.push(x);
        }
    }
    out
}

/// `x_t = c + e_t + θ e_{t−1}` with Gaussian shocks.
pub fn ma1(n: usize, c: f64, theta: f64, sd: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shock = Normal::new(0.0, sd).expect("finite sd");
    let mut prev = shock.sample(&mut rng);
    (0..n)
        .map(|_| {
            let e = shock.sample(&mut rng);
            let x = c + e + theta * prev;
            prev = e;
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_shaped() {
        let a = household_hourly(100, 7);
        assert_eq!(a, household_hourly(100, 7));
        assert_ne!(a, household_hourly(100, 8));
        assert_eq!(a.width(), 3);
        assert_eq!(a.interval(), 3600);
        let e = a.column(ENERGY).unwrap();
        let mean = e.iter().sum::<f64>() / e.len() as f64;
        assert!((mean - 400_000.0).abs() < 50_000.0);
    }

    #[test]
    fn ar1_sample_coefficient() {
        let x = ar1(5000, 0.0, 0.5, 1.0, 3);
        let num: f64 = x.windows(2).map(|w| w[0] * w[1]).sum();
        let den: f64 = x.iter().map(|v| v * v).sum();
        assert!((num / den - 0.5).abs() < 0.05);
    }
}
