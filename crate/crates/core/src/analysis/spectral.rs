use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stationary::certificate;

/// Tolerance on the eigen-action residuals.
pub const EIGEN_TOL: f64 = 1e-13;
/// Tolerance on `det(lambda I - A)` at the claimed eigenvalues.
pub const DETERMINANT_TOL: f64 = 1e-9;
/// Largest order for which determinants are evaluated.
pub const DETERMINANT_MAX_ORDER: usize = 8;

/// Row-major `p x p` linearization of the conjugate system at its fixed
/// point: zero diagonal, `-beta` everywhere else.
pub fn linearized_matrix(p: usize, beta: f64) -> Vec<f64> {
    let mut a = vec![-beta; p * p];
    for i in 0..p {
        a[i * p + i] = 0.0;
    }
    a
}

fn mat_vec(a: &[f64], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum()).collect()
}

/// Determinant by LU factorization with partial pivoting.
pub fn lu_determinant(matrix: &[f64], n: usize) -> f64 {
    let mut a = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .unwrap_or(col);
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for r in col + 1..n {
            let factor = a[r * n + col] / d;
            if factor != 0.0 {
                for j in col..n {
                    a[r * n + j] -= factor * a[col * n + j];
                }
            }
        }
    }
    det
}

fn shifted(a: &[f64], n: usize, lambda: f64) -> Vec<f64> {
    let mut m: Vec<f64> = a.iter().map(|x| -x).collect();
    for i in 0..n {
        m[i * n + i] += lambda;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub p: usize,
    pub beta: f64,
    pub lambda_repulsive: f64,
    /// `max_i |(A 1)_i - (1 - p) beta|`.
    pub ones_residual: f64,
    /// Largest residual of `A w = beta w` over `w = e_1 - e_j`, `j = 2..p`.
    pub sum_zero_residual: f64,
    /// `det(beta I - A)`, evaluated for `p <= 8`.
    pub det_at_contractive: Option<f64>,
    /// `det((1 - p) beta I - A)`, evaluated for `p <= 8`.
    pub det_at_repulsive: Option<f64>,
    pub passed: bool,
}

/// Checks the claimed eigenstructure of the linearized conjugate system.
pub fn spectral_check(p: usize) -> Result<SpectralReport> {
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let cert = certificate(p)?;
    let beta = cert.beta;
    let a = linearized_matrix(p, beta);

    let ones = vec![1.0; p];
    let ones_residual = mat_vec(&a, &ones)
        .iter()
        .map(|x| (x - cert.lambda_repulsive).abs())
        .fold(0.0, f64::max);

    let mut sum_zero_residual = 0.0_f64;
    for j in 1..p {
        let mut w = vec![0.0; p];
        w[0] = 1.0;
        w[j] = -1.0;
        let aw = mat_vec(&a, &w);
        for (x, y) in aw.iter().zip(&w) {
            sum_zero_residual = sum_zero_residual.max((x - beta * y).abs());
        }
    }

    let (det_at_contractive, det_at_repulsive) = if p <= DETERMINANT_MAX_ORDER {
        (
            Some(lu_determinant(&shifted(&a, p, beta), p)),
            Some(lu_determinant(&shifted(&a, p, cert.lambda_repulsive), p)),
        )
    } else {
        (None, None)
    };

    let det_ok = |d: Option<f64>| d.map_or(true, |d| d.abs() <= DETERMINANT_TOL);
    let passed = ones_residual <= EIGEN_TOL
        && sum_zero_residual <= EIGEN_TOL
        && det_ok(det_at_contractive)
        && det_ok(det_at_repulsive)
        && cert.lambda_repulsive.abs() > 1.0;

    Ok(SpectralReport {
        p,
        beta,
        lambda_repulsive: cert.lambda_repulsive,
        ones_residual,
        sum_zero_residual,
        det_at_contractive,
        det_at_repulsive,
        passed,
    })
}
