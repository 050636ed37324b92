//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the library's solvers.

#![allow(dead_code)]

use energy_forecast::regressors::MlpNetwork;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Projection of `v` onto `{0 ≤ βᵢ ≤ c, Σ sᵢ βᵢ = 0}` by bisection on the
/// multiplier of the equality constraint.
fn project(v: &[f64], s: &[f64], c: f64) -> Vec<f64> {
    let at = |lam: f64| -> (Vec<f64>, f64) {
        let b: Vec<f64> = v.iter().zip(s).map(|(vi, si)| (vi - lam * si).clamp(0.0, c)).collect();
        let g = b.iter().zip(s).map(|(bi, si)| bi * si).sum();
        (b, g)
    };
    let (mut lo, mut hi) = (-1e6, 1e6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        // Σ sᵢ βᵢ(λ) is non-increasing in λ.
        if at(mid).1 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi)).0
}

/// Dense projected-gradient solution of the ε-SVR dual
/// `min ½ (α-α*)ᵀK(α-α*) + εΣ(α+α*) − yᵀ(α-α*)`, returning `(α, α*)`.
pub fn svr_dual_projected_gradient(kernel: &[Vec<f64>], y: &[f64], c: f64, eps: f64) -> (Vec<f64>, Vec<f64>) {
    let n = y.len();
    let s: Vec<f64> = (0..2 * n).map(|i| if i < n { 1.0 } else { -1.0 }).collect();
    // Lipschitz bound of the gradient: 2·trace(K) ≥ 2·λ_max(K).
    let lip = 2.0 * (0..n).map(|i| kernel[i][i]).sum::<f64>();
    let step = 1.0 / lip;
    let mut beta = vec![0.0; 2 * n];
    for _ in 0..200_000 {
        let diff: Vec<f64> = (0..n).map(|i| beta[i] - beta[n + i]).collect();
        let kd: Vec<f64> = (0..n).map(|i| (0..n).map(|j| kernel[i][j] * diff[j]).sum()).collect();
        let grad: Vec<f64> = (0..2 * n)
            .map(|i| if i < n { kd[i] + eps - y[i] } else { -kd[i - n] + eps + y[i - n] })
            .collect();
        let trial: Vec<f64> = beta.iter().zip(&grad).map(|(b, g)| b - step * g).collect();
        let next = project(&trial, &s, c);
        let change = next.iter().zip(&beta).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        beta = next;
        if change < 1e-13 {
            break;
        }
    }
    (beta[..n].to_vec(), beta[n..].to_vec())
}

pub fn rbf(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    (-gamma * a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>()).exp()
}

/// GP posterior mean at `q` for two 1-d training points, by explicit
/// inversion of the 2×2 matrix `K + σ_n² I`.
pub fn gp_mean_two_points(x: [f64; 2], y: [f64; 2], sf2: f64, ell: f64, sn2: f64, q: f64) -> f64 {
    let k = |a: f64, b: f64| sf2 * (-(a - b) * (a - b) / (2.0 * ell * ell)).exp();
    let (a, b, d) = (k(x[0], x[0]) + sn2, k(x[0], x[1]), k(x[1], x[1]) + sn2);
    let det = a * d - b * b;
    let inv = [[d / det, -b / det], [-b / det, a / det]];
    let w = [inv[0][0] * y[0] + inv[0][1] * y[1], inv[1][0] * y[0] + inv[1][1] * y[1]];
    k(q, x[0]) * w[0] + k(q, x[1]) * w[1]
}

/// Conditional sum of squares of an MA(1) with intercept `c`, written out
/// directly: `e_t = w_t − c − θ e_{t−1}`, `e_{−1} = 0`.
pub fn ma1_css(w: &[f64], c: f64, theta: f64) -> f64 {
    let mut prev = 0.0;
    let mut total = 0.0;
    for &v in w {
        let e = v - c - theta * prev;
        total += e * e;
        prev = e;
    }
    total
}

/// Grid minimizer of [`ma1_css`] over θ ∈ [−0.99, 0.99] in steps of 0.01.
pub fn ma1_theta_grid(w: &[f64], c: f64) -> f64 {
    (-99..=99)
        .map(|k| k as f64 / 100.0)
        .min_by(|a, b| ma1_css(w, c, *a).total_cmp(&ma1_css(w, c, *b)))
        .expect("non-empty grid")
}

/// Largest relative mismatch between backprop and central differences
/// (step 1e-5) on a random 3-sample frame.
pub fn mlp_gradient_error(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let inputs = rng.random_range(1..5);
    let hidden = rng.random_range(1..6);
    let net = MlpNetwork::random(inputs, hidden, seed);
    let xs: Vec<Vec<f64>> = (0..3).map(|_| (0..inputs).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
    let ys: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
    let (_, analytic) = net.loss_gradient(&xs, &ys);
    let base = net.parameters();
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for i in 0..base.len() {
        let mut plus = net.clone();
        let mut minus = net.clone();
        let mut p = base.clone();
        p[i] += h;
        plus.set_parameters(&p);
        p[i] -= 2.0 * h;
        minus.set_parameters(&p);
        let numeric = (plus.loss(&xs, &ys) - minus.loss(&xs, &ys)) / (2.0 * h);
        let scale = analytic[i].abs().max(numeric.abs()).max(1e-6);
        worst = worst.max((analytic[i] - numeric).abs() / scale);
    }
    worst
}

/// Noiseless bivariate VAR(1) from `(4, −3)`.
pub fn var1_rows(a: [[f64; 2]; 2], n: usize) -> Vec<[f64; 2]> {
    let mut rows = vec![[4.0, -3.0]];
    for t in 1..n {
        let y = rows[t - 1];
        rows.push([a[0][0] * y[0] + a[0][1] * y[1], a[1][0] * y[0] + a[1][1] * y[1]]);
    }
    rows
}

/// Noiseless `x_t = 0.5 x_{t−1} + 1` from `x₀ = 10`.
pub fn noiseless_ar1(n: usize) -> Vec<f64> {
    let mut x = vec![10.0];
    for t in 1..n {
        x.push(0.5 * x[t - 1] + 1.0);
    }
    x
}
