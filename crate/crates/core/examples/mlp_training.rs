//! Single-hidden-layer perceptron trained by backpropagation with momentum.

use energy_forecast::regressors::{MlpModel, MlpParams, Regressor};
use energy_forecast::SupervisedFrame;

fn main() -> energy_forecast::Result<()> {
    let rows: Vec<Vec<f64>> = (0..200).map(|i| vec![(i % 20) as f64 / 10.0, (i / 20) as f64 / 5.0]).collect();
    let ys: Vec<f64> = rows.iter().map(|r| (r[0] * 2.0).sin() + 0.5 * r[1]).collect();
    let frame = SupervisedFrame::from_rows(rows, ys)?;

    let params = MlpParams { hidden: Some(8), epochs: 300, seed: 7, ..MlpParams::default() };
    let model = MlpModel::fit(&frame, &params)?;
    let h = &model.loss_history;
    println!("hidden units {}, parameters {}", model.network.hidden, model.network.n_parameters());
    for epoch in [0, 1, 10, 100, h.len() - 1] {
        println!("  epoch {epoch:>3}: training RMSE {:.5}", h[epoch]);
    }
    println!("final learning rate {}", model.final_learning_rate);
    println!("f(1.0, 0.8) = {:.4}, true {:.4}", model.predict(&[1.0, 0.8]), (2.0f64).sin() + 0.4);
    Ok(())
}
