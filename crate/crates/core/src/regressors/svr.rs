use serde::{Deserialize, Serialize};

use super::{require_samples, squared_distance, Regressor};
use crate::error::{Error, Result};
use crate::transform::{Scaler, SupervisedFrame};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvrParams {
    pub c: f64,
    pub epsilon: f64,
    /// Gaussian kernel width in `exp(-γ‖x - x'‖²)`. `None` picks
    /// `1 / (n_features · var(X))` on the (scaled) training inputs.
    pub gamma: Option<f64>,
    pub tol: f64,
    /// `None` means `10⁴ · n_samples`.
    pub max_iter: Option<usize>,
    pub standardize: bool,
}

impl Default for SvrParams {
    fn default() -> Self {
        Self { c: 1.0, epsilon: 0.1, gamma: None, tol: 1e-3, max_iter: None, standardize: true }
    }
}

/// ε-insensitive support vector regression with a Gaussian kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvrModel {
    pub c: f64,
    pub epsilon: f64,
    pub gamma: f64,
    x_scaler: Option<Scaler>,
    y_scaler: Option<Scaler>,
    /// Dual variables for the upper (`alpha`) and lower (`alpha_star`)
    /// tube constraints, one per training row.
    pub alpha: Vec<f64>,
    pub alpha_star: Vec<f64>,
    pub support_vectors: Vec<Vec<f64>>,
    /// `αᵢ - αᵢ*` for each support vector.
    pub coefficients: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    /// Largest KKT violation `m(β) - M(β)` at exit.
    pub violation: f64,
    /// `false` when `max_iter` was reached first; the model is still the
    /// best iterate found.
    pub converged: bool,
}

/// Solution of the ε-SVR dual on a precomputed kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    pub alpha_star: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub violation: f64,
    pub converged: bool,
}

const TAU: f64 = 1e-12;

/// Minimize `½ (α-α*)ᵀ K (α-α*) + ε Σ(α+α*) - yᵀ(α-α*)` subject to
/// `Σ(α-α*) = 0` and `0 ≤ α, α* ≤ C` by two-variable SMO steps on the
/// maximal violating pair.
///
/// Internally the problem is written over `β = [α; α*]` with signs
/// `s = [+1; -1]`, Hessian `Qᵢⱼ = sᵢ sⱼ K` and linear term `[ε - y; ε + y]`.
pub fn solve_dual(kernel: &[Vec<f64>], y: &[f64], c: f64, epsilon: f64, tol: f64, max_iter: usize) -> DualSolution {
    let n = y.len();
    let m = 2 * n;
    let sign = |t: usize| if t < n { 1.0 } else { -1.0 };
    let base = |t: usize| t % n;
    let q = |a: usize, b: usize| sign(a) * sign(b) * kernel[base(a)][base(b)];

    let mut beta = vec![0.0; m];
    let mut grad: Vec<f64> = (0..m).map(|t| if t < n { epsilon - y[t] } else { epsilon + y[t - n] }).collect();

    let at_upper = |b: f64| b >= c;
    let at_lower = |b: f64| b <= 0.0;

    let mut iterations = 0;
    let mut violation;
    loop {
        // i maximizes -s G over I_up, j minimizes it over I_low.
        let mut gmax = f64::NEG_INFINITY;
        let mut gmax2 = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        let mut j = usize::MAX;
        for t in 0..m {
            if sign(t) > 0.0 {
                if !at_upper(beta[t]) && -grad[t] > gmax {
                    gmax = -grad[t];
                    i = t;
                }
                if !at_lower(beta[t]) && grad[t] > gmax2 {
                    gmax2 = grad[t];
                    j = t;
                }
            } else {
                if !at_lower(beta[t]) && grad[t] > gmax {
                    gmax = grad[t];
                    i = t;
                }
                if !at_upper(beta[t]) && -grad[t] > gmax2 {
                    gmax2 = -grad[t];
                    j = t;
                }
            }
        }
        violation = gmax + gmax2;
        if i == usize::MAX || j == usize::MAX || violation <= tol || iterations >= max_iter {
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (beta[i], beta[j]);
        let qij = q(i, j);
        let (qii, qjj) = (q(i, i), q(j, j));
        if sign(i) != sign(j) {
            let quad = (qii + qjj + 2.0 * qij).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = beta[i] - beta[j];
            beta[i] += delta;
            beta[j] += delta;
            if diff > 0.0 {
                if beta[j] < 0.0 {
                    beta[j] = 0.0;
                    beta[i] = diff;
                }
            } else if beta[i] < 0.0 {
                beta[i] = 0.0;
                beta[j] = -diff;
            }
            if diff > 0.0 {
                if beta[i] > c {
                    beta[i] = c;
                    beta[j] = c - diff;
                }
            } else if beta[j] > c {
                beta[j] = c;
                beta[i] = c + diff;
            }
        } else {
            let quad = (qii + qjj - 2.0 * qij).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = beta[i] + beta[j];
            beta[i] -= delta;
            beta[j] += delta;
            if sum > c {
                if beta[i] > c {
                    beta[i] = c;
                    beta[j] = sum - c;
                }
            } else if beta[j] < 0.0 {
                beta[j] = 0.0;
                beta[i] = sum;
            }
            if sum > c {
                if beta[j] > c {
                    beta[j] = c;
                    beta[i] = sum - c;
                }
            } else if beta[i] < 0.0 {
                beta[i] = 0.0;
                beta[j] = sum;
            }
        }

        let (di, dj) = (beta[i] - old_i, beta[j] - old_j);
        for t in 0..m {
            grad[t] += q(t, i) * di + q(t, j) * dj;
        }
    }

    // Bias from free variables, or the midpoint of the feasible interval.
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    let mut free_sum = 0.0;
    let mut free = 0usize;
    for t in 0..m {
        let yg = sign(t) * grad[t];
        if at_upper(beta[t]) {
            if sign(t) < 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else if at_lower(beta[t]) {
            if sign(t) > 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else {
            free += 1;
            free_sum += yg;
        }
    }
    let rho = if free > 0 { free_sum / free as f64 } else { (upper + lower) / 2.0 };

    let mut alpha = beta[..n].to_vec();
    let mut alpha_star = beta[n..].to_vec();
    // Both sides positive only costs 2ε·min; removing it keeps α - α*.
    for (a, s) in alpha.iter_mut().zip(alpha_star.iter_mut()) {
        let overlap = a.min(*s);
        if overlap > 0.0 {
            *a -= overlap;
            *s -= overlap;
        }
    }
    DualSolution {
        alpha,
        alpha_star,
        bias: -rho,
        iterations,
        violation: violation.max(0.0),
        converged: violation <= tol,
    }
}

/// Dual objective (to be minimized) at `(alpha, alpha_star)`.
pub fn dual_objective(kernel: &[Vec<f64>], y: &[f64], epsilon: f64, alpha: &[f64], alpha_star: &[f64]) -> f64 {
    let coef: Vec<f64> = alpha.iter().zip(alpha_star).map(|(a, s)| a - s).collect();
    let mut quad = 0.0;
    for (i, ci) in coef.iter().enumerate() {
        for (j, cj) in coef.iter().enumerate() {
            quad += ci * cj * kernel[i][j];
        }
    }
    let linear: f64 = alpha
        .iter()
        .zip(alpha_star)
        .zip(y)
        .map(|((a, s), yi)| epsilon * (a + s) - yi * (a - s))
        .sum();
    0.5 * quad + linear
}

pub fn gaussian_kernel(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    (-gamma * squared_distance(a, b)).exp()
}

impl SvrModel {
    pub fn fit(frame: &SupervisedFrame, params: &SvrParams) -> Result<Self> {
        if !(params.c > 0.0) || !(params.epsilon >= 0.0) || params.gamma.is_some_and(|g| !(g > 0.0)) {
            return Err(Error::InvalidArgument("SVR requires C > 0, ε ≥ 0 and γ > 0".into()));
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
        let gamma = params.gamma.unwrap_or_else(|| auto_gamma(&inputs));

        let n = inputs.len();
        let kernel: Vec<Vec<f64>> = inputs
            .iter()
            .map(|a| inputs.iter().map(|b| gaussian_kernel(gamma, a, b)).collect())
            .collect();
        let max_iter = params.max_iter.unwrap_or(10_000 * n);
        let sol = solve_dual(&kernel, &targets, params.c, params.epsilon, params.tol, max_iter);

        let mut support_vectors = Vec::new();
        let mut coefficients = Vec::new();
        for (i, row) in inputs.iter().enumerate() {
            let coef = sol.alpha[i] - sol.alpha_star[i];
            if coef != 0.0 {
                support_vectors.push(row.clone());
                coefficients.push(coef);
            }
        }
        Ok(Self {
            c: params.c,
            epsilon: params.epsilon,
            gamma,
            x_scaler,
            y_scaler,
            alpha: sol.alpha,
            alpha_star: sol.alpha_star,
            support_vectors,
            coefficients,
            bias: sol.bias,
            iterations: sol.iterations,
            violation: sol.violation,
            converged: sol.converged,
        })
    }

    pub fn n_support(&self) -> usize {
        self.support_vectors.len()
    }
}

fn auto_gamma(inputs: &[Vec<f64>]) -> f64 {
    let width = inputs.first().map_or(1, Vec::len).max(1);
    let count = (inputs.len() * width) as f64;
    let mean = inputs.iter().flatten().sum::<f64>() / count;
    let var = inputs.iter().flatten().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
    if var > 0.0 {
        1.0 / (width as f64 * var)
    } else {
        1.0 / width as f64
    }
}

impl Regressor for SvrModel {
    fn name(&self) -> &'static str {
        "svr"
    }

    fn predict(&self, x: &[f64]) -> f64 {
        let q = match &self.x_scaler {
            Some(s) => s.apply(x),
            None => x.to_vec(),
        };
        let f = self
            .support_vectors
            .iter()
            .zip(&self.coefficients)
            .map(|(sv, c)| c * gaussian_kernel(self.gamma, sv, &q))
            .sum::<f64>()
            + self.bias;
        match &self.y_scaler {
            Some(s) => s.invert_scalar(f),
            None => f,
        }
    }

    fn parameters(&self) -> Vec<f64> {
        let mut out = vec![self.c, self.epsilon, self.gamma, self.bias];
        for s in self.x_scaler.iter().chain(&self.y_scaler) {
            out.extend(&s.mean);
            out.extend(&s.std);
        }
        out.extend(&self.alpha);
        out.extend(&self.alpha_star);
        out.extend(self.support_vectors.iter().flatten());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(c: f64, epsilon: f64, gamma: f64) -> SvrParams {
        SvrParams { c, epsilon, gamma: Some(gamma), tol: 1e-8, max_iter: None, standardize: false }
    }

    #[test]
    fn constant_targets_need_no_support_vectors() {
        let f = SupervisedFrame::from_rows(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![4.0; 4],
        )
        .unwrap();
        let m = SvrModel::fit(&f, &SvrParams::default()).unwrap();
        assert_eq!(m.n_support(), 0);
        assert!((m.predict(&[1.7]) - 4.0).abs() < 1e-12);
        assert!((m.predict(&[-9.0]) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn box_and_complementarity_constraints() {
        let x: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64 / 3.0]).collect();
        let y: Vec<f64> = x.iter().map(|r| (r[0]).sin()).collect();
        let f = SupervisedFrame::from_rows(x, y).unwrap();
        let m = SvrModel::fit(&f, &raw(2.0, 0.05, 0.7)).unwrap();
        assert!(m.converged);
        let net: f64 = m.alpha.iter().zip(&m.alpha_star).map(|(a, s)| a - s).sum();
        assert!(net.abs() < 1e-9);
        for (a, s) in m.alpha.iter().zip(&m.alpha_star) {
            assert!(*a >= 0.0 && *a <= 2.0 && *s >= 0.0 && *s <= 2.0);
            assert_eq!(a * s, 0.0);
        }
    }

    #[test]
    fn points_inside_tube_carry_zero_duals() {
        let x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 2.0]).collect();
        let y: Vec<f64> = x.iter().map(|r| 0.5 * r[0] + if r[0] as i64 % 2 == 0 { 0.05 } else { -0.05 }).collect();
        let f = SupervisedFrame::from_rows(x.clone(), y.clone()).unwrap();
        let eps = 0.2;
        let m = SvrModel::fit(&f, &raw(10.0, eps, 0.5)).unwrap();
        let mut inside = 0;
        for (i, (xi, yi)) in x.iter().zip(&y).enumerate() {
            if (m.predict(xi) - yi).abs() < eps - 1e-6 {
                inside += 1;
                assert_eq!(m.alpha[i], 0.0);
                assert_eq!(m.alpha_star[i], 0.0);
            }
        }
        assert!(inside > 0);
    }

    #[test]
    fn iteration_cap_reports_not_converged() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..20).map(|i| ((i * 7) % 5) as f64).collect();
        let f = SupervisedFrame::from_rows(x, y).unwrap();
        let mut p = raw(5.0, 0.01, 0.3);
        p.max_iter = Some(2);
        let m = SvrModel::fit(&f, &p).unwrap();
        assert!(!m.converged);
        assert_eq!(m.iterations, 2);
        assert!(m.predict(&[3.0]).is_finite());
    }
}
