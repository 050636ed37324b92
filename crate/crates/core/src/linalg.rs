//! Dense least squares shared by OLS, ARIMA initialization and VAR.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Intercept plus slopes for each of several targets regressed on one
/// shared design.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LeastSquares {
    pub intercepts: Vec<f64>,
    /// `slopes[k][j]`: coefficient of feature `j` in equation `k`.
    pub slopes: Vec<Vec<f64>>,
    /// Whether the ridge fallback was needed.
    pub jittered: bool,
}

const RANK_TOL: f64 = 1e-12;
const RIDGE_SCALE: f64 = 1e-10;

/// Solve `y_k ≈ b_k + X β_k` for every target column. Columns are centered
/// first, so the intercept is never penalized by the ridge fallback.
pub(crate) fn least_squares(rows: &[Vec<f64>], targets: &[Vec<f64>]) -> Result<LeastSquares> {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    if n < p + 1 || n == 0 {
        return Err(Error::Underdetermined { samples: n, features: p });
    }
    for t in targets {
        if t.len() != n {
            return Err(Error::LengthMismatch { left: n, right: t.len() });
        }
    }
    let x_mean: Vec<f64> = (0..p).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64).collect();
    let y_mean: Vec<f64> = targets.iter().map(|t| t.iter().sum::<f64>() / n as f64).collect();
    let xc = DMatrix::from_fn(n, p, |i, j| rows[i][j] - x_mean[j]);
    let yc = DMatrix::from_fn(n, targets.len(), |i, k| targets[k][i] - y_mean[k]);

    let (beta, jittered) = if p == 0 {
        (DMatrix::zeros(0, targets.len()), false)
    } else {
        match solve_qr(&xc, &yc) {
            Some(b) => (b, false),
            None => (solve_ridge(&xc, &yc)?, true),
        }
    };

    let slopes: Vec<Vec<f64>> =
        (0..targets.len()).map(|k| (0..p).map(|j| beta[(j, k)]).collect()).collect();
    let intercepts = slopes
        .iter()
        .zip(&y_mean)
        .map(|(b, ym)| ym - b.iter().zip(&x_mean).map(|(bj, xm)| bj * xm).sum::<f64>())
        .collect();
    Ok(LeastSquares { intercepts, slopes, jittered })
}

fn solve_qr(xc: &DMatrix<f64>, yc: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let qr = xc.clone().qr();
    let r = qr.r();
    let diag_max = r.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if diag_max == 0.0 || r.diagonal().iter().any(|v| v.abs() <= RANK_TOL * diag_max) {
        return None;
    }
    let qty = qr.q().transpose() * yc;
    r.solve_upper_triangular(&qty)
}

fn solve_ridge(xc: &DMatrix<f64>, yc: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let p = xc.ncols();
    let mut gram = xc.transpose() * xc;
    let trace = gram.trace();
    let jitter = if trace > 0.0 { RIDGE_SCALE * trace / p as f64 } else { RIDGE_SCALE };
    for j in 0..p {
        gram[(j, j)] += jitter;
    }
    let rhs = xc.transpose() * yc;
    let chol = gram.cholesky().ok_or(Error::SingularDesign)?;
    Ok(chol.solve(&rhs))
}

/// Lower Cholesky factor of `a + jitter·I`, escalating the jitter by ×10
/// from `start` until it succeeds or exceeds `max`.
pub(crate) fn cholesky_with_jitter(
    a: &DMatrix<f64>,
    start: f64,
    max: f64,
) -> Result<(nalgebra::Cholesky<f64, nalgebra::Dyn>, f64)> {
    if let Some(c) = a.clone().cholesky() {
        return Ok((c, 0.0));
    }
    let mean_diag = (a.trace() / a.nrows().max(1) as f64).abs().max(1.0);
    let mut jitter = start * mean_diag;
    while jitter <= max * mean_diag {
        let mut m = a.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += jitter;
        }
        if let Some(c) = m.cholesky() {
            return Ok((c, jitter));
        }
        jitter *= 10.0;
    }
    Err(Error::CholeskyFailure { jitter })
}

/// `true` when every eigenvalue of the AR companion matrix lies strictly
/// inside the unit circle, i.e. all roots of `1 - φ₁z - … - φ_p z^p` lie
/// outside it.
pub(crate) fn ar_is_stationary(phi: &[f64]) -> bool {
    let p = phi.len();
    if p == 0 {
        return true;
    }
    let mut companion = DMatrix::zeros(p, p);
    for (j, &c) in phi.iter().enumerate() {
        companion[(0, j)] = c;
    }
    for i in 1..p {
        companion[(i, i - 1)] = 1.0;
    }
    companion.complex_eigenvalues().iter().all(|z| z.norm() < 1.0)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_normal_equations() {
        let rows = vec![vec![0.0], vec![1.0], vec![2.0]];
        let fit = least_squares(&rows, &[vec![1.0, 3.0, 4.0]]).unwrap();
        assert!((fit.slopes[0][0] - 1.5).abs() < 1e-12);
        assert!((fit.intercepts[0] - 7.0 / 6.0).abs() < 1e-12);
        assert!(!fit.jittered);
    }

    #[test]
    fn constant_column_falls_back_to_ridge() {
        let rows = vec![vec![5.0, 0.0], vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 3.0]];
        let fit = least_squares(&rows, &[vec![1.0, 3.0, 5.0, 7.0]]).unwrap();
        assert!(fit.jittered);
        assert!(fit.slopes[0][0].abs() < 1e-9);
        assert!((fit.slopes[0][1] - 2.0).abs() < 1e-6);
        assert!((fit.intercepts[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn underdetermined_is_rejected() {
        let rows = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(matches!(
            least_squares(&rows, &[vec![1.0, 2.0]]),
            Err(Error::Underdetermined { .. })
        ));
    }

    #[test]
    fn stationarity_check() {
        assert!(ar_is_stationary(&[0.5]));
        assert!(!ar_is_stationary(&[1.2]));
        assert!(ar_is_stationary(&[0.5, 0.3]));
        assert!(!ar_is_stationary(&[0.5, 0.6]));
    }

    #[test]
    fn jitter_rescues_semidefinite() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let (_, jitter) = cholesky_with_jitter(&a, 1e-10, 1e-2).unwrap();
        assert!(jitter > 0.0);
        let neg = DMatrix::from_row_slice(1, 1, &[-5.0]);
        assert!(cholesky_with_jitter(&neg, 1e-10, 1e-2).is_err());
    }
}
