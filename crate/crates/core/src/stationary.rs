//! The stationary point of the derived system and its instability certificate.
//!
//! Every derived system with `p >= 3` has exactly one fixed point in the open
//! cube: all weights equal to `1 - alpha_p`, where `alpha_p` is the root in
//! `(0, 1)` of `x^(p-1) + x - 1`. Linearizing the conjugate system there gives
//! the matrix `-beta_p (J - I)` with `beta_p = alpha_p^(p-2)`, whose spectrum is
//! `beta_p` (multiplicity `p - 1`, sum-zero directions) and `(1 - p) beta_p`
//! (the all-ones direction). The second eigenvalue is always below `-1`, so the
//! fixed point repels.

use serde::{Deserialize, Serialize};

use crate::dynamics::{ConjugateTuple, WeightTuple};
use crate::error::{Error, Result};

/// Width at which the bisection bracket is considered collapsed.
const BRACKET_WIDTH: f64 = 1e-15;
const NEWTON_POLISH_STEPS: usize = 3;
/// Tolerance used when a certificate or stationary tuple is requested.
pub const DEFAULT_ALPHA_TOL: f64 = 1e-14;

/// `theta_p(x) = x^(p-1) + x - 1`, with the power taken through `exp`/`ln`.
pub fn theta(p: usize, x: f64) -> f64 {
    ((p - 1) as f64 * x.ln()).exp() + x - 1.0
}

fn theta_derivative(p: usize, x: f64) -> f64 {
    (p - 1) as f64 * ((p - 2) as f64 * x.ln()).exp() + 1.0
}

/// Root of `x^(p-1) + x - 1` in `(0, 1)`.
///
/// Bisects `[0, 1]` down to a `1e-15` bracket, then applies a few Newton steps.
/// `theta_p` is strictly increasing on `[0, 1]` with `theta_p(0) = -1` and
/// `theta_p(1) = 1`, so the bracket is always valid.
pub fn solve_alpha(p: usize, tol: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::OrderTooSmall { p, min: 2 });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if theta(p, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut residual = theta(p, x).abs();
    for _ in 0..NEWTON_POLISH_STEPS {
        let next = x - theta(p, x) / theta_derivative(p, x);
        if !(next > 0.0 && next < 1.0) {
            break;
        }
        let next_residual = theta(p, next).abs();
        if next_residual > residual {
            break;
        }
        x = next;
        residual = next_residual;
    }

    if residual > tol {
        return Err(Error::ToleranceNotMet { p, residual, tol });
    }
    Ok(x)
}

/// Spectral data of the linearized conjugate system at its fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryCertificate {
    pub p: usize,
    pub alpha: f64,
    /// `alpha^(p-2)`, the off-diagonal magnitude of the linearization.
    pub beta: f64,
    /// Eigenvalue `(1 - p) beta` along the all-ones direction.
    pub lambda_repulsive: f64,
    /// Eigenvalue `beta` on the sum-zero subspace.
    pub lambda_contractive: f64,
    /// `|lambda_repulsive| - 1`; positive means the fixed point is unstable.
    pub instability_margin: f64,
}

impl StationaryCertificate {
    pub fn is_unstable(&self) -> bool {
        self.instability_margin > 0.0 && self.lambda_contractive.abs() < 1.0
    }
}

fn require_order(p: usize) -> Result<()> {
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    Ok(())
}

pub fn certificate(p: usize) -> Result<StationaryCertificate> {
    require_order(p)?;
    let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL)?;
    let beta = ((p - 2) as f64 * alpha.ln()).exp();
    let lambda_repulsive = (1.0 - p as f64) * beta;
    Ok(StationaryCertificate {
        p,
        alpha,
        beta,
        lambda_repulsive,
        lambda_contractive: beta,
        instability_margin: lambda_repulsive.abs() - 1.0,
    })
}

/// The unique fixed point of the derived system: every weight equals `1 - alpha_p`.
pub fn stationary_point(p: usize) -> Result<WeightTuple> {
    Ok(stationary_conjugate(p)?.to_weights())
}

/// The same fixed point in conjugate coordinates (every component `alpha_p`).
pub fn stationary_conjugate(p: usize) -> Result<ConjugateTuple> {
    require_order(p)?;
    let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL)?;
    ConjugateTuple::new(vec![alpha; p])
}
