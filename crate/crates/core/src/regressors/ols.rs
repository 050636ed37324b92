use serde::{Deserialize, Serialize};

use super::Regressor;
use crate::error::{Error, Result};
use crate::linalg::{dot, least_squares};
use crate::transform::SupervisedFrame;

/// Ordinary least squares with an unpenalized intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsModel {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    /// Set when the design was rank deficient and ridge jitter was applied.
    pub jittered: bool,
}

impl OlsModel {
    pub fn fit(frame: &SupervisedFrame) -> Result<Self> {
        let p = frame.n_features();
        if frame.n_samples() < p + 1 {
            return Err(Error::Underdetermined { samples: frame.n_samples(), features: p });
        }
        let fit = least_squares(&frame.x, std::slice::from_ref(&frame.y))?;
        Ok(Self {
            intercept: fit.intercepts[0],
            coefficients: fit.slopes.into_iter().next().unwrap_or_default(),
            jittered: fit.jittered,
        })
    }
}

impl Regressor for OlsModel {
    fn name(&self) -> &'static str {
        "ols"
    }

    fn predict(&self, x: &[f64]) -> f64 {
        self.intercept + dot(&self.coefficients, x)
    }

    fn parameters(&self) -> Vec<f64> {
        std::iter::once(self.intercept).chain(self.coefficients.iter().copied()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(x: &[f64], y: &[f64]) -> SupervisedFrame {
        SupervisedFrame::from_rows(x.iter().map(|&v| vec![v]).collect(), y.to_vec()).unwrap()
    }

    #[test]
    fn hand_solved_three_points() {
        let m = OlsModel::fit(&frame(&[0.0, 1.0, 2.0], &[1.0, 3.0, 4.0])).unwrap();
        assert!((m.coefficients[0] - 1.5).abs() < 1e-10);
        assert!((m.intercept - 7.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn constant_target() {
        let m = OlsModel::fit(&frame(&[0.0, 1.0, 2.0, 5.0], &[4.0; 4])).unwrap();
        assert!((m.intercept - 4.0).abs() < 1e-12);
        assert!(m.coefficients[0].abs() < 1e-12);
    }

    #[test]
    fn exact_line_interpolates() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let m = OlsModel::fit(&frame(&x, &y)).unwrap();
        assert!((m.coefficients[0] - 2.0).abs() < 1e-12);
        assert!(m.intercept.abs() < 1e-12);
        for (xi, yi) in x.iter().zip(&y) {
            assert!((m.predict(&[*xi]) - yi).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_samples() {
        let f = SupervisedFrame::from_rows(vec![vec![1.0, 2.0], vec![2.0, 1.0]], vec![1.0, 2.0])
            .unwrap();
        assert!(matches!(OlsModel::fit(&f), Err(Error::Underdetermined { .. })));
    }

    #[test]
    fn residuals_have_zero_mean() {
        let x = [0.3, 1.7, 2.2, 4.1, 5.0, 6.6];
        let y = [1.0, -2.0, 0.5, 3.3, 2.0, 9.1];
        let m = OlsModel::fit(&frame(&x, &y)).unwrap();
        let mean: f64 = x.iter().zip(&y).map(|(a, b)| b - m.predict(&[*a])).sum::<f64>() / 6.0;
        assert!(mean.abs() < 1e-10);
    }
}
