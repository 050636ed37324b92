use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{require_samples, Regressor};
use crate::error::{Error, Result};
use crate::transform::{Scaler, SupervisedFrame};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    /// Hidden width; `None` means `⌈(n_features + 1) / 2⌉`.
    pub hidden: Option<usize>,
    pub learning_rate: f64,
    pub momentum: f64,
    pub epochs: usize,
    pub seed: u64,
    pub standardize: bool,
}

impl Default for MlpParams {
    fn default() -> Self {
        Self { hidden: None, learning_rate: 0.3, momentum: 0.2, epochs: 500, seed: 0, standardize: true }
    }
}

/// One sigmoid hidden layer feeding a linear output unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpNetwork {
    pub inputs: usize,
    pub hidden: usize,
    /// `hidden × inputs`, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl MlpNetwork {
    /// Weights drawn uniformly from (−0.5, 0.5) in parameter order.
    pub fn random(inputs: usize, hidden: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |len: usize| -> Vec<f64> { (0..len).map(|_| rng.random_range(-0.5..0.5)).collect() };
        let w1 = draw(inputs * hidden);
        let b1 = draw(hidden);
        let w2 = draw(hidden);
        let b2 = draw(1)[0];
        Self { inputs, hidden, w1, b1, w2, b2 }
    }

    pub fn n_parameters(&self) -> usize {
        self.hidden * (self.inputs + 2) + 1
    }

    /// `[w1, b1, w2, b2]` flattened.
    pub fn parameters(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_parameters());
        out.extend(&self.w1);
        out.extend(&self.b1);
        out.extend(&self.w2);
        out.push(self.b2);
        out
    }

    pub fn set_parameters(&mut self, params: &[f64]) {
        assert_eq!(params.len(), self.n_parameters());
        let (w1, rest) = params.split_at(self.w1.len());
        let (b1, rest) = rest.split_at(self.hidden);
        let (w2, rest) = rest.split_at(self.hidden);
        self.w1.copy_from_slice(w1);
        self.b1.copy_from_slice(b1);
        self.w2.copy_from_slice(w2);
        self.b2 = rest[0];
    }

    fn hidden_activations(&self, x: &[f64], out: &mut [f64]) {
        for (k, h) in out.iter_mut().enumerate() {
            let row = &self.w1[k * self.inputs..(k + 1) * self.inputs];
            let z = self.b1[k] + row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>();
            *h = sigmoid(z);
        }
    }

    pub fn forward(&self, x: &[f64]) -> f64 {
        let mut h = vec![0.0; self.hidden];
        self.hidden_activations(x, &mut h);
        self.b2 + self.w2.iter().zip(&h).map(|(w, v)| w * v).sum::<f64>()
    }

    /// `½ Σ (f(x) − y)²`
    pub fn loss(&self, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
        xs.iter().zip(ys).map(|(x, y)| 0.5 * (self.forward(x) - y).powi(2)).sum()
    }

    pub fn rmse(&self, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
        (2.0 * self.loss(xs, ys) / ys.len().max(1) as f64).sqrt()
    }

    /// Loss and its gradient by backpropagation, in [`Self::parameters`] order.
    pub fn loss_gradient(&self, xs: &[Vec<f64>], ys: &[f64]) -> (f64, Vec<f64>) {
        let mut grad = vec![0.0; self.n_parameters()];
        let mut loss = 0.0;
        let mut h = vec![0.0; self.hidden];
        for (x, y) in xs.iter().zip(ys) {
            loss += self.accumulate_gradient(x, *y, &mut h, &mut grad);
        }
        (loss, grad)
    }

    /// Adds the gradient of `½ (f(x) − y)²` to `grad`; returns that loss.
    fn accumulate_gradient(&self, x: &[f64], y: f64, h: &mut [f64], grad: &mut [f64]) -> f64 {
        self.hidden_activations(x, h);
        let out = self.b2 + self.w2.iter().zip(h.iter()).map(|(w, v)| w * v).sum::<f64>();
        let delta = out - y;
        let (g_w1, rest) = grad.split_at_mut(self.w1.len());
        let (g_b1, rest) = rest.split_at_mut(self.hidden);
        let (g_w2, g_b2) = rest.split_at_mut(self.hidden);
        for k in 0..self.hidden {
            g_w2[k] += delta * h[k];
            let dk = delta * self.w2[k] * h[k] * (1.0 - h[k]);
            g_b1[k] += dk;
            for (g, v) in g_w1[k * self.inputs..(k + 1) * self.inputs].iter_mut().zip(x) {
                *g += dk * v;
            }
        }
        g_b2[0] += delta;
        0.5 * delta * delta
    }
}

/// Multilayer perceptron trained by per-sample gradient descent with
/// momentum, in training-row order.
///
/// After each epoch the full training RMSE is compared with the previous
/// kept epoch; an increase reverts the epoch and halves the learning rate,
/// so `loss_history` never increases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    pub network: MlpNetwork,
    x_scaler: Option<Scaler>,
    y_scaler: Option<Scaler>,
    /// Training RMSE (scaled units) before training and after each epoch.
    pub loss_history: Vec<f64>,
    pub final_learning_rate: f64,
}

impl MlpModel {
    pub fn fit(frame: &SupervisedFrame, params: &MlpParams) -> Result<Self> {
        require_samples(frame, 1)?;
        if !(params.learning_rate > 0.0) || params.hidden == Some(0) {
            return Err(Error::InvalidArgument(
                "MLP requires a positive learning rate and hidden width".into(),
            ));
        }
        let (x_scaler, y_scaler) = if params.standardize {
            (Some(Scaler::fit(&frame.x)?), Some(Scaler::fit_column(&frame.y)?))
        } else {
            (None, None)
        };
        let xs = match &x_scaler {
            Some(s) => s.apply_rows(&frame.x),
            None => frame.x.clone(),
        };
        let ys: Vec<f64> = match &y_scaler {
            Some(s) => frame.y.iter().map(|&v| s.apply_scalar(v)).collect(),
            None => frame.y.clone(),
        };
        let inputs = frame.n_features();
        let hidden = params.hidden.unwrap_or((inputs + 2) / 2);
        let mut network = MlpNetwork::random(inputs, hidden, params.seed);

        let mut lr = params.learning_rate;
        let mut kept = network.rmse(&xs, &ys);
        let mut loss_history = Vec::with_capacity(params.epochs + 1);
        loss_history.push(kept);
        let mut velocity = vec![0.0; network.n_parameters()];
        let mut grad = vec![0.0; network.n_parameters()];
        let mut h = vec![0.0; hidden];

        for epoch in 1..=params.epochs {
            let snapshot = network.clone();
            let mut theta = network.parameters();
            for (x, y) in xs.iter().zip(&ys) {
                grad.iter_mut().for_each(|g| *g = 0.0);
                network.accumulate_gradient(x, *y, &mut h, &mut grad);
                for ((p, v), g) in theta.iter_mut().zip(velocity.iter_mut()).zip(&grad) {
                    *v = params.momentum * *v - lr * g;
                    *p += *v;
                }
                network.set_parameters(&theta);
            }
            let loss = network.rmse(&xs, &ys);
            if !loss.is_finite() || theta.iter().any(|p| !p.is_finite()) {
                return Err(Error::DivergedLoss { epoch, learning_rate: lr });
            }
            if loss > kept {
                network = snapshot;
                velocity.iter_mut().for_each(|v| *v = 0.0);
                lr *= 0.5;
            } else {
                kept = loss;
            }
            loss_history.push(kept);
        }

        Ok(Self { network, x_scaler, y_scaler, loss_history, final_learning_rate: lr })
    }

    pub fn training_rmse(&self) -> f64 {
        *self.loss_history.last().expect("history holds the initial loss")
    }
}

impl Regressor for MlpModel {
    fn name(&self) -> &'static str {
        "mlp"
    }

    fn predict(&self, x: &[f64]) -> f64 {
        let out = match &self.x_scaler {
            Some(s) => self.network.forward(&s.apply(x)),
            None => self.network.forward(x),
        };
        match &self.y_scaler {
            Some(s) => s.invert_scalar(out),
            None => out,
        }
    }

    fn parameters(&self) -> Vec<f64> {
        let mut out = self.network.parameters();
        for s in self.x_scaler.iter().chain(&self.y_scaler) {
            out.extend(&s.mean);
            out.extend(&s.std);
        }
        out
    }
}
