//! The comparative protocol: all seven models over three chronological
//! splits of a seeded hourly series, scored one step ahead and ranked.
//!
//! ```text
//! cargo run --release --example benchmark_protocol
//! ```

use std::time::Instant;

use energy_forecast::evaluation::{Benchmark, Dataset, EvalSpec, ModelKind, ModelSpec};
use energy_forecast::series::ENERGY;
use energy_forecast::{synthetic, MultiSeries};

fn main() -> energy_forecast::Result<()> {
    let energy = synthetic::energy_hourly(2000, 42);
    let dataset = Dataset::new("synthetic", MultiSeries::from_series(ENERGY, &energy), ENERGY)?;

    let plan = Benchmark {
        models: ModelKind::ALL.iter().map(|k| ModelSpec::new(*k)).collect(),
        datasets: vec![dataset],
        splits: vec![0.6, 0.7, 0.8],
        intervals: vec![None],
        spec: EvalSpec::default(),
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let started = Instant::now();
    let report = plan.run()?;
    println!("{}", report.to_text(true));
    println!("{} records in {:.1}s", report.records.len(), started.elapsed().as_secs_f64());
    Ok(())
}
