//! Order preservation, ratio monotonicity and the two-step spread contraction
//! of the conjugate system.
//!
//! Two steps of the conjugate system act on the extreme components of a sorted
//! state by the same affine map: with `pi = prod_r u_r`,
//!
//! ```text
//! K = prod_{1<r<p} (u_r - pi)          C = 1 - prod_{1<r<p} (1 - pi / u_r)
//! u_1'' = K u_1 + C                    u_p'' = K u_p + C
//! ```
//!
//! so the spread `u_p / u_1 - 1` is multiplied by `K u_1 / (K u_1 + C)`, which
//! is always below one half.

use serde::{Deserialize, Serialize};

use super::symmetric::{elementary_symmetric, horner, monic_coefficients};
use crate::dynamics::{leave_one_out_sums, ln_from_pair, ConjugateTuple, TrajectoryRecord};
use crate::error::{Error, Result};

/// Absolute slack on order-one quantities in the lemma verifiers.
pub const VERIFIER_SLACK: f64 = 1e-12;
/// Absolute slack on component order (sortedness).
pub const SORT_SLACK: f64 = 1e-14;
/// Relative tolerance on the two-step recurrence identities.
pub const IDENTITY_RTOL: f64 = 1e-10;
/// Spreads at or below this are not subject to the halving check.
pub const SPREAD_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCCertificate {
    pub m: usize,
    /// `prod_{1<r<p} (u_r - pi)`.
    pub k: f64,
    pub c: f64,
    pub pi: f64,
    /// `K u_1 / C`, in `(0, 1)`.
    pub ratio_bound: f64,
    /// `1 - K u_1 / C`, computed without cancellation; the lemma is the
    /// statement that this lies in `(0, 1)`.
    pub ratio_margin: f64,
    /// Two-step spread ratio `K u_1 / (K u_1 + C)`, below one half.
    pub contraction: f64,
    /// Relative error of `u_1^(m+2) = K u_1 + C` against the recorded state.
    pub residual_first: f64,
    /// Same for `u_p^(m+2)`.
    pub residual_last: f64,
}

impl LemmaCCertificate {
    pub fn holds(&self) -> bool {
        self.k > 0.0
            && self.c > 0.0
            && self.ratio_bound > 0.0
            && self.ratio_margin > 0.0
            && self.residual_first <= IDENTITY_RTOL
            && self.residual_last <= IDENTITY_RTOL
    }
}

/// `K`, `C` and `pi` for a single state, in log space.
///
/// `pi / u_r` is the next weight `t_r'`, so `1 - pi / u_r` is the next
/// conjugate component and its log is taken from the (value, complement)
/// pair to stay exact near either end of the interval.
pub fn lemma_c_constants(state: &ConjugateTuple) -> Result<(f64, f64, f64)> {
    let p = state.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let logs = state.ln_values();
    let loo = leave_one_out_sums(&logs);
    let ln_pi: f64 = logs.iter().sum();
    let mut ln_next_middle = 0.0;
    let mut ln_middle = 0.0;
    for r in 1..p - 1 {
        let (next_u, next_t) = (-loo[r].exp_m1(), loo[r].exp());
        ln_next_middle += ln_from_pair(next_u, next_t);
        ln_middle += logs[r];
    }
    let k = (ln_middle + ln_next_middle).exp();
    let c = -ln_next_middle.exp_m1();
    Ok((k, c, ln_pi.exp()))
}

/// `C - K u_1` for a sorted state with consecutive gaps `u_{k+1} - u_k`.
///
/// With `t_r = pi / u_r` this is `1 - (1 + t_p) prod_{1<r<p} (1 - t_r)`, and the
/// log of the product splits into terms of one sign:
/// `ln(1 - t_p^2) + (p - 3) ln(1 - t_p) + sum ln(1 - (t_r - t_p) / (1 - t_p))`,
/// where `t_r - t_p = t_r (u_p - u_r) / u_p` comes straight from the gaps.
pub fn lemma_c_margin(state: &ConjugateTuple, gaps: &[f64]) -> Result<f64> {
    let p = state.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    if gaps.len() != p - 1 {
        return Err(Error::LengthMismatch {
            expected: p - 1,
            actual: gaps.len(),
        });
    }
    let loo = leave_one_out_sums(&state.ln_values());
    let up = state.u()[p - 1];
    let tp = loo[p - 1].exp();
    let one_minus_tp = -loo[p - 1].exp_m1();
    let ln_one_minus_tp = ln_from_pair(one_minus_tp, tp);
    let mut ln_product = if tp <= 0.5 {
        (-tp * tp).ln_1p() + (p - 3) as f64 * ln_one_minus_tp
    } else {
        tp.ln_1p() + (p - 2) as f64 * ln_one_minus_tp
    };
    let mut above = 0.0;
    for r in (1..p - 1).rev() {
        above += gaps[r];
        let x = loo[r].exp() * (above / up) / one_minus_tp;
        // 1 - x is also u_r' / u_p'; use that form when x is far from zero
        ln_product += if x <= 0.5 {
            (-x).ln_1p()
        } else {
            (-loo[r].exp_m1()).ln() - ln_one_minus_tp
        };
    }
    Ok(-ln_product.exp_m1())
}

/// `C` through the elementary symmetric functions of the middle components:
/// `u_1 u_p (e_{p-2} - prod (u_r - pi)) / pi`, with the product obtained by
/// evaluating the monic polynomial with roots `u_2..u_{p-1}` at `pi`.
pub fn c_symmetric_form(state: &ConjugateTuple) -> Result<f64> {
    let p = state.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let u = state.u();
    let middle = &u[1..p - 1];
    let pi: f64 = u.iter().product();
    let n = middle.len();
    let top = elementary_symmetric(middle, n)?;
    let q_at_pi = horner(&monic_coefficients(middle), pi);
    let signed = if n % 2 == 0 { q_at_pi } else { -q_at_pi };
    Ok(u[0] * u[p - 1] * (top - signed) / pi)
}

/// `C` as `u_1 u_p sum_{j=0}^{p-3} (-pi)^j e_{p-3-j}` over the middle components.
pub fn c_alternating_sum(state: &ConjugateTuple) -> Result<f64> {
    let p = state.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let u = state.u();
    let middle = &u[1..p - 1];
    let pi: f64 = u.iter().product();
    let n = middle.len();
    let mut sum = 0.0;
    let mut power = 1.0;
    for j in 0..n {
        sum += power * elementary_symmetric(middle, n - 1 - j)?;
        power *= -pi;
    }
    Ok(u[0] * u[p - 1] * sum)
}

fn relative_error(actual: f64, expected: f64) -> f64 {
    if actual == expected {
        0.0
    } else {
        (actual - expected).abs() / actual.abs().max(expected.abs())
    }
}

fn sorted_within(state: &ConjugateTuple, slack: f64) -> bool {
    (1..state.p()).all(|k| state.difference(k, k - 1) >= -slack)
}

/// Certificate for the two-step map at step `m` of a recorded trajectory.
pub fn lemma_c_certificate(traj: &TrajectoryRecord, m: usize) -> Result<LemmaCCertificate> {
    let p = traj.p();
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    let state = traj.state(m).ok_or(Error::MissingStep(m))?;
    let later = traj.state(m + 2).ok_or(Error::MissingStep(m + 2))?;
    if !sorted_within(state, SORT_SLACK) {
        return Err(Error::NotSorted);
    }
    let gap = state.difference(p - 1, 0);
    if gap <= 0.0 {
        return Err(Error::RegularState);
    }
    let (k, c, pi) = lemma_c_constants(state)?;
    let (u1, up) = (state.u()[0], state.u()[p - 1]);
    let ku1 = k * u1;
    // whichever of K u_1 / C and 1 - K u_1 / C is smaller is computed directly
    let direct = ku1 / c;
    let (ratio_bound, ratio_margin, contraction) = if direct <= 0.5 {
        (direct, 1.0 - direct, direct / (1.0 + direct))
    } else {
        let margin = lemma_c_margin(state, &traj.gaps()[m])? / c;
        // K u_1 / (K u_1 + C) = 1/2 - margin / (2 (2 - margin))
        (1.0 - margin, margin, 0.5 - margin / (2.0 * (2.0 - margin)))
    };
    Ok(LemmaCCertificate {
        m,
        k,
        c,
        pi,
        ratio_bound,
        ratio_margin,
        contraction,
        residual_first: relative_error(later.u()[0], ku1 + c),
        residual_last: relative_error(later.u()[p - 1], k * up + c),
    })
}

/// Outcome of a verifier that scans a trajectory for its first violation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub holds: bool,
    /// Step (and component pair, where relevant) of the first violation.
    pub first_violation: Option<(usize, usize, usize)>,
    /// Largest excess over the allowed bound seen anywhere (negative when
    /// every inequality holds with room to spare).
    pub worst_excess: f64,
}

impl ScanOutcome {
    fn new() -> Self {
        Self {
            holds: true,
            first_violation: None,
            worst_excess: f64::NEG_INFINITY,
        }
    }

    fn observe(&mut self, excess: f64, at: (usize, usize, usize)) {
        self.worst_excess = self.worst_excess.max(excess);
        if excess > 0.0 || excess.is_nan() {
            self.holds = false;
            self.first_violation.get_or_insert(at);
        }
    }
}

/// Every recorded state is non-decreasing within [`SORT_SLACK`].
pub fn check_sortedness(traj: &TrajectoryRecord) -> ScanOutcome {
    let mut out = ScanOutcome::new();
    for (m, state) in traj.states().iter().enumerate() {
        for k in 1..state.p() {
            out.observe(-state.difference(k, k - 1) - SORT_SLACK, (m, k - 1, k));
        }
    }
    out
}

/// `u_l / u_k - 1` for `k < l`, from the precise difference.
fn ratio_excess(state: &ConjugateTuple, l: usize, k: usize) -> f64 {
    state.difference(l, k) / state.u()[k]
}

/// For every `k < l` and every `m`:
/// `1 <= u_l^(m+2) / u_k^(m+2) <= u_l^(m) / u_k^(m)`, with [`VERIFIER_SLACK`].
pub fn check_ratio_monotonicity(traj: &TrajectoryRecord) -> ScanOutcome {
    let mut out = ScanOutcome::new();
    let states = traj.states();
    for m in 0..states.len().saturating_sub(2) {
        let (now, later) = (&states[m], &states[m + 2]);
        for k in 0..now.p() {
            for l in k + 1..now.p() {
                let before = ratio_excess(now, l, k);
                let after = ratio_excess(later, l, k);
                let excess = (after - before).max(-after) - VERIFIER_SLACK;
                out.observe(excess, (m, k, l));
            }
        }
    }
    out
}

/// `spread[m+2] < spread[m] / 2` wherever `spread[m]` exceeds [`SPREAD_FLOOR`].
pub fn check_spread_halving(traj: &TrajectoryRecord) -> ScanOutcome {
    let mut out = ScanOutcome::new();
    let spread = traj.spread();
    for m in 0..spread.len().saturating_sub(2) {
        if spread[m] > SPREAD_FLOOR {
            let ratio = spread[m + 2] / spread[m];
            // strict inequality: a ratio of exactly 1/2 is a violation, unless
            // the excess is within the rounding error of the two steps
            let excess = ratio - 0.5;
            let excess = if excess < 0.0 {
                excess
            } else if excess <= 0.5 * halving_rounding_bound(traj, m) {
                0.0
            } else {
                excess.max(f64::MIN_POSITIVE)
            };
            out.observe(excess, (m, 0, traj.p() - 1));
        }
    }
    out
}

/// Relative rounding error of `spread[m + 2] / spread[m]`: each gap picks up
/// the error of `exp(sum ln u_i)`, which is proportional to the magnitude of
/// the sum.
pub fn halving_rounding_bound(traj: &TrajectoryRecord, m: usize) -> f64 {
    let magnitude: f64 = traj.states()[m..=m + 1]
        .iter()
        .flat_map(|s| s.ln_values())
        .map(f64::abs)
        .sum();
    4.0 * f64::EPSILON * (2.0 * traj.p() as f64 + magnitude)
}

/// `spread[2q] <= 2^-q spread[0]` and `spread[2q+1] <= 2^-q spread[1]`.
pub fn check_geometric_ratio_bound(traj: &TrajectoryRecord) -> ScanOutcome {
    let mut out = ScanOutcome::new();
    let spread = traj.spread();
    for (m, &s) in spread.iter().enumerate() {
        let q = (m / 2) as i32;
        let bound = 0.5_f64.powi(q) * spread[m % 2];
        out.observe(s - bound - VERIFIER_SLACK, (m, 0, traj.p() - 1));
    }
    out
}

/// `t_l^(m+1) / t_k^(m+1) = u_k^(m) / u_l^(m)` for all `k < l`, relative
/// tolerance [`VERIFIER_SLACK`].
pub fn check_t_ratio_transfer(traj: &TrajectoryRecord) -> ScanOutcome {
    let mut out = ScanOutcome::new();
    let states = traj.states();
    for m in 0..states.len().saturating_sub(1) {
        let (now, next) = (&states[m], &states[m + 1]);
        for k in 0..now.p() {
            for l in k + 1..now.p() {
                let t_ratio = next.complement()[l] / next.complement()[k];
                let u_ratio = now.u()[k] / now.u()[l];
                out.observe(relative_error(t_ratio, u_ratio) - VERIFIER_SLACK, (m, k, l));
            }
        }
    }
    out
}

/// Certificates at every step where one is defined.
pub fn lemma_c_certificates(traj: &TrajectoryRecord) -> Vec<LemmaCCertificate> {
    (0..traj.len().saturating_sub(2))
        .filter_map(|m| lemma_c_certificate(traj, m).ok())
        .collect()
}
