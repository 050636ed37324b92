//! Gaussian-process regression with a squared-exponential kernel: posterior
//! mean and predictive variance.

use energy_forecast::regressors::{GpModel, GpParams, Regressor};
use energy_forecast::SupervisedFrame;

fn main() -> energy_forecast::Result<()> {
    let xs: Vec<f64> = (0..12).map(|i| i as f64 * 0.5).collect();
    let frame = SupervisedFrame::from_rows(xs.iter().map(|x| vec![*x]).collect(), xs.iter().map(|x| x.sin()).collect())?;
    let params = GpParams { signal_variance: 1.0, length_scale: 1.0, noise_variance: 1e-4, standardize: false };
    let gp = GpModel::fit(&frame, &params)?;
    println!("{:>6} {:>9} {:>9} {:>9}", "x", "sin(x)", "mean", "sd");
    for x in [0.25, 1.75, 3.1, 5.4, 9.0] {
        let (mean, var) = gp.predict_with_variance(&[x]);
        println!("{x:>6.2} {:>9.4} {mean:>9.4} {:>9.4}", f64::sin(x), var.sqrt());
    }
    println!("far from the data the mean returns to the prior 0: {:.4}", gp.predict(&[50.0]));
    println!("jitter added to the kernel: {}", gp.jitter);
    Ok(())
}
