//! ε-SVR with a Gaussian kernel, solved in the dual by SMO.

use energy_forecast::regressors::{Regressor, SvrModel, SvrParams};
use energy_forecast::SupervisedFrame;

fn main() -> energy_forecast::Result<()> {
    let xs: Vec<f64> = (0..60).map(|i| i as f64 / 10.0).collect();
    let ys: Vec<f64> = xs.iter().map(|x| (1.3 * x).sin() + 0.05 * ((x * 37.0).sin())).collect();
    let frame = SupervisedFrame::from_rows(xs.iter().map(|x| vec![*x]).collect(), ys.clone())?;

    for epsilon in [0.01, 0.1, 0.5] {
        let params = SvrParams { c: 10.0, epsilon, gamma: Some(2.0), ..SvrParams::default() };
        let m = SvrModel::fit(&frame, &params)?;
        let mae = xs.iter().zip(&ys).map(|(x, y)| (m.predict(&[*x]) - y).abs()).sum::<f64>() / xs.len() as f64;
        println!(
            "ε = {epsilon:<4}: {:>2} support vectors, {:>5} SMO steps, converged {}, training MAE {mae:.4}",
            m.n_support(),
            m.iterations,
            m.converged
        );
    }
    Ok(())
}
