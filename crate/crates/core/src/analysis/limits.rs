//! Limits of the even and odd subsequences, and the scalar comparison
//! sequence that bounds them.

use serde::{Deserialize, Serialize};

use super::alternation::detect_alternation;
use super::lemma::VERIFIER_SLACK;
use crate::dynamics::{comparison_sequence_from_pair, ConjugateTuple, TrajectoryRecord};
use crate::error::{Error, Result};

/// Which parity of the conjugate orbit heads to the all-zeros corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LimitPattern {
    EvenToZeroOddToOne,
    EvenToOneOddToZero,
    Undecided,
}

fn near_zero(state: &ConjugateTuple, tol: f64) -> bool {
    state.u().iter().all(|&x| x < tol)
}

fn near_one(state: &ConjugateTuple, tol: f64) -> bool {
    state.complement().iter().all(|&x| x < tol)
}

/// Inspects the last recorded even and odd states.
pub fn even_odd_limits(traj: &TrajectoryRecord, tol: f64) -> Result<LimitPattern> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::InvalidTolerance(tol));
    }
    let n = traj.len();
    if n < 2 {
        return Ok(LimitPattern::Undecided);
    }
    let last = n - 1;
    let (even, odd) = if last % 2 == 0 {
        (last, last - 1)
    } else {
        (last - 1, last)
    };
    let (even, odd) = (&traj.states()[even], &traj.states()[odd]);
    Ok(if near_zero(even, tol) && near_one(odd, tol) {
        LimitPattern::EvenToZeroOddToOne
    } else if near_one(even, tol) && near_zero(odd, tol) {
        LimitPattern::EvenToOneOddToZero
    } else {
        LimitPattern::Undecided
    })
}

/// Comparison sequence started at the first below-alpha step of a trajectory,
/// with the bounds it is checked against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    /// Step at which the comparison sequence starts (state below `alpha_p`).
    pub start: usize,
    pub tau: Vec<f64>,
    /// Number of `(q, parity)` inequalities checked.
    pub checked: usize,
    pub violations: usize,
    /// Largest amount by which an inequality fails (negative if all hold).
    pub worst_excess: f64,
}

/// Builds the comparison sequence `tau_{m+1} = 1 - tau_m^(p-1)` from the first
/// below-alpha step `s` of the trajectory and checks
/// `tau_{s+2q} >= u_p^(s+2q)` and `tau_{s+2q+1} <= u_1^(s+2q+1)`.
///
/// The start value is `u_p^(s)` when `u_1^(s+1) > f_p(u_p^(s))`, and
/// `f_p^{-1}(u_1^(s+1))` otherwise.
pub fn comparison_domination(traj: &TrajectoryRecord) -> Result<DominationReport> {
    let p = traj.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let report = detect_alternation(traj)?;
    let start = report.first_below().ok_or(Error::AlternationNotFound)?;
    let states = &traj.states()[start..];
    if states.len() < 2 {
        return Err(Error::MissingStep(start + 1));
    }
    let exponent = (p - 1) as f64;
    let (s0, s1) = (&states[0], &states[1]);

    // f_p(u_p) has complement u_p^(p-1); compare complements to stay exact near 1.
    let last = p - 1;
    let fp_complement = (exponent * s0.ln_u(last)).exp();
    let (tau0, tau0_c) = if s1.complement()[0] < fp_complement {
        (s0.u()[last], s0.complement()[last])
    } else {
        let l = s1.complement()[0].ln() / exponent;
        (l.exp(), -l.exp_m1())
    };
    let tau = comparison_sequence_from_pair(tau0, tau0_c, p, states.len() - 1);

    let mut checked = 0;
    let mut violations = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for (i, (state, &bound)) in states.iter().zip(&tau).enumerate() {
        let excess = if i % 2 == 0 {
            state.u()[last] - bound
        } else {
            bound - state.u()[0]
        };
        checked += 1;
        worst_excess = worst_excess.max(excess);
        if excess > VERIFIER_SLACK {
            violations += 1;
        }
    }
    Ok(DominationReport {
        start,
        tau,
        checked,
        violations,
        worst_excess,
    })
}
