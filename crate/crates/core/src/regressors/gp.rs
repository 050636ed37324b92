use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{require_samples, squared_distance, Regressor};
use crate::error::{Error, Result};
use crate::linalg::cholesky_with_jitter;
use crate::transform::{Scaler, SupervisedFrame};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpParams {
    pub signal_variance: f64,
    pub length_scale: f64,
    pub noise_variance: f64,
    /// Standardize inputs and targets from the training frame.
    pub standardize: bool,
}

impl Default for GpParams {
    fn default() -> Self {
        Self { signal_variance: 1.0, length_scale: 1.0, noise_variance: 0.01, standardize: true }
    }
}

/// Gaussian-process regression with a squared-exponential kernel and a
/// zero prior mean.
#[derive(Debug, Clone)]
pub struct GpModel {
    pub params: GpParams,
    x_scaler: Option<Scaler>,
    y_scaler: Option<Scaler>,
    inputs: Vec<Vec<f64>>,
    /// `(K + σ_n² I)⁻¹ y`
    alpha: DVector<f64>,
    /// Lower Cholesky factor of `K + σ_n² I` (plus any jitter).
    chol_lower: DMatrix<f64>,
    pub jitter: f64,
}

impl GpModel {
    pub fn fit(frame: &SupervisedFrame, params: &GpParams) -> Result<Self> {
        if !(params.noise_variance > 0.0) || !(params.length_scale > 0.0) || !(params.signal_variance > 0.0) {
            return Err(Error::InvalidArgument(
                "GP variances and length scale must be positive".into(),
            ));
        }
        require_samples(frame, 1)?;
        let (x_scaler, y_scaler) = if params.standardize {
            (Some(Scaler::fit(&frame.x)?), Some(Scaler::fit_column(&frame.y)?))
        } else {
            (None, None)
        };
        let inputs = match &x_scaler {
            Some(s) => s.apply_rows(&frame.x),
            None => frame.x.clone(),
        };
        let targets: Vec<f64> = match &y_scaler {
            Some(s) => frame.y.iter().map(|&v| s.apply_scalar(v)).collect(),
            None => frame.y.clone(),
        };

        let n = inputs.len();
        let mut k = DMatrix::from_fn(n, n, |i, j| kernel(params, &inputs[i], &inputs[j]));
        for i in 0..n {
            k[(i, i)] += params.noise_variance;
        }
        let (chol, jitter) = cholesky_with_jitter(&k, 1e-10, 1e-2)?;
        let alpha = chol.solve(&DVector::from_vec(targets));
        Ok(Self {
            params: params.clone(),
            x_scaler,
            y_scaler,
            inputs,
            alpha,
            chol_lower: chol.l(),
            jitter,
        })
    }

    /// Posterior predictive mean and variance (noise included) at `x`.
    pub fn predict_with_variance(&self, x: &[f64]) -> (f64, f64) {
        let q = match &self.x_scaler {
            Some(s) => s.apply(x),
            None => x.to_vec(),
        };
        let kstar = DVector::from_iterator(
            self.inputs.len(),
            self.inputs.iter().map(|xi| kernel(&self.params, &q, xi)),
        );
        let mean = kstar.dot(&self.alpha);
        let v = self
            .chol_lower
            .solve_lower_triangular(&kstar)
            .expect("cholesky factor has a positive diagonal");
        let latent = (self.params.signal_variance - v.dot(&v)).max(0.0);
        let var = latent + self.params.noise_variance;
        match &self.y_scaler {
            Some(s) => (s.invert_scalar(mean), var * s.std[0] * s.std[0]),
            None => (mean, var),
        }
    }
}

fn kernel(p: &GpParams, a: &[f64], b: &[f64]) -> f64 {
    p.signal_variance * (-squared_distance(a, b) / (2.0 * p.length_scale * p.length_scale)).exp()
}

impl Regressor for GpModel {
    fn name(&self) -> &'static str {
        "gp"
    }

    fn predict(&self, x: &[f64]) -> f64 {
        self.predict_with_variance(x).0
    }

    fn parameters(&self) -> Vec<f64> {
        let mut out = vec![
            self.params.signal_variance,
            self.params.length_scale,
            self.params.noise_variance,
            self.jitter,
        ];
        for s in self.x_scaler.iter().chain(&self.y_scaler) {
            out.extend(&s.mean);
            out.extend(&s.std);
        }
        out.extend(self.inputs.iter().flatten());
        out.extend(self.alpha.iter());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(noise: f64) -> GpParams {
        GpParams { signal_variance: 1.0, length_scale: 1.0, noise_variance: noise, standardize: false }
    }

    #[test]
    fn noise_free_interpolation() {
        let f = SupervisedFrame::from_rows(
            vec![vec![0.0], vec![1.5], vec![3.0]],
            vec![1.0, -2.0, 0.5],
        )
        .unwrap();
        let m = GpModel::fit(&f, &raw(1e-12)).unwrap();
        for (x, y) in f.x.iter().zip(&f.y) {
            assert!((m.predict(x) - y).abs() < 1e-6);
        }
    }

    #[test]
    fn far_query_reverts_to_prior() {
        let f = SupervisedFrame::from_rows(vec![vec![0.0], vec![1.0]], vec![3.0, 4.0]).unwrap();
        let m = GpModel::fit(&f, &raw(0.1)).unwrap();
        let (mean, var) = m.predict_with_variance(&[100.0]);
        assert!(mean.abs() < 1e-12);
        assert!((var - 1.1).abs() < 1e-12);
    }

    #[test]
    fn variance_at_training_points_below_prior() {
        let f = SupervisedFrame::from_rows(vec![vec![0.0], vec![0.5], vec![2.0]], vec![0.0, 1.0, 0.0])
            .unwrap();
        let m = GpModel::fit(&f, &raw(0.01)).unwrap();
        for x in &f.x {
            let (_, var) = m.predict_with_variance(x);
            assert!((0.0..=1.01).contains(&var));
        }
    }

    #[test]
    fn rejects_nonpositive_noise() {
        let f = SupervisedFrame::from_rows(vec![vec![0.0]], vec![0.0]).unwrap();
        assert!(GpModel::fit(&f, &raw(0.0)).is_err());
    }
}
