//! The derived system on weights and its conjugate on `u = 1 - t`.
//!
//! Both tuple types carry every component together with its complement, so a
//! value within `1e-300` of either end of `(0, 1)` keeps full relative
//! precision on the side where it matters. Products `prod_{i != k} u_i` are
//! formed in log space from prefix and suffix sums of `ln u_i`; the new weight
//! is `exp` of that sum and the new conjugate component is `-expm1` of it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest magnitude a component or its complement may take before the
/// iterate is considered saturated (normal binary64 range).
pub const SATURATION_FLOOR: f64 = f64::MIN_POSITIVE;

/// Half-width of the band around `alpha` treated as "on the boundary".
pub const PHASE_BOUNDARY_TOL: f64 = 1e-15;

fn validate_unit(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::OrderTooSmall {
            p: values.len(),
            min: 2,
        });
    }
    for (index, &value) in values.iter().enumerate() {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::OutOfUnitInterval { index, value });
        }
    }
    Ok(())
}

/// `ln(x)` for a value given together with its complement `1 - x`.
#[inline]
pub(crate) fn ln_from_pair(value: f64, complement: f64) -> f64 {
    if value <= 0.5 {
        value.ln()
    } else {
        (-complement).ln_1p()
    }
}

/// `sum_{i != k} logs[i]` for every `k`, without subtracting from the total.
pub(crate) fn leave_one_out_sums(logs: &[f64]) -> Vec<f64> {
    let n = logs.len();
    let mut out = vec![0.0; n];
    let mut acc = 0.0;
    for k in 0..n {
        out[k] = acc;
        acc += logs[k];
    }
    acc = 0.0;
    for k in (0..n).rev() {
        out[k] += acc;
        acc += logs[k];
    }
    out
}

/// One step of the conjugate system on a (value, complement) pair, with no
/// range checks. Accepts components on the closed boundary.
pub(crate) fn raw_step(u: &[f64], t: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let logs: Vec<f64> = u.iter().zip(t).map(|(&a, &b)| ln_from_pair(a, b)).collect();
    let sums = leave_one_out_sums(&logs);
    let next_u = sums.iter().map(|&s| -s.exp_m1()).collect();
    let next_t = sums.iter().map(|&s| s.exp()).collect();
    (next_u, next_t)
}

fn saturated_index(u: &[f64], t: &[f64]) -> Option<usize> {
    u.iter()
        .zip(t)
        .position(|(&a, &b)| !(a >= SATURATION_FLOOR && b >= SATURATION_FLOOR))
}

/// Orders two components given as (value, complement) pairs. Values that
/// round to the same binary64 near 1 are told apart by their complements.
fn cmp_pair(a: (f64, f64), b: (f64, f64)) -> std::cmp::Ordering {
    if a.0 > 0.5 && b.0 > 0.5 {
        b.1.total_cmp(&a.1)
    } else {
        a.0.total_cmp(&b.0)
    }
}

fn non_decreasing(u: &[f64], c: &[f64]) -> bool {
    (1..u.len()).all(|k| cmp_pair((u[k - 1], c[k - 1]), (u[k], c[k])).is_le())
}

/// Weights `t_k` of one barypolygonal sequence: the state of the derived system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightTuple {
    t: Vec<f64>,
    complement: Vec<f64>,
}

impl WeightTuple {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        validate_unit(&t)?;
        let complement = t.iter().map(|&x| 1.0 - x).collect();
        Ok(Self { t, complement })
    }

    pub fn p(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// `1 - t_k`, carried with full relative precision.
    pub fn complement(&self) -> &[f64] {
        &self.complement
    }

    pub fn to_conjugate(&self) -> ConjugateTuple {
        ConjugateTuple::from_pair(self.complement.clone(), self.t.clone())
    }

    pub fn is_regular(&self) -> bool {
        self.t.windows(2).all(|w| w[0] == w[1])
    }
}

impl TryFrom<Vec<f64>> for WeightTuple {
    type Error = Error;

    fn try_from(t: Vec<f64>) -> Result<Self> {
        Self::new(t)
    }
}

impl From<WeightTuple> for Vec<f64> {
    fn from(w: WeightTuple) -> Self {
        w.t
    }
}

/// Conjugate coordinates `u_k = 1 - t_k`: the state of the conjugate system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugateTuple {
    u: Vec<f64>,
    complement: Vec<f64>,
    sorted: bool,
}

impl ConjugateTuple {
    pub fn new(u: Vec<f64>) -> Result<Self> {
        validate_unit(&u)?;
        let complement = u.iter().map(|&x| 1.0 - x).collect();
        Ok(Self::from_pair(u, complement))
    }

    pub(crate) fn from_pair(u: Vec<f64>, complement: Vec<f64>) -> Self {
        debug_assert_eq!(u.len(), complement.len());
        let sorted = non_decreasing(&u, &complement);
        Self { u, complement, sorted }
    }

    pub fn from_weights(t: &WeightTuple) -> Self {
        t.to_conjugate()
    }

    pub fn to_weights(&self) -> WeightTuple {
        WeightTuple {
            t: self.complement.clone(),
            complement: self.u.clone(),
        }
    }

    pub fn p(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// `1 - u_k` (the weights `t_k`), carried with full relative precision.
    pub fn complement(&self) -> &[f64] {
        &self.complement
    }

    /// Whether `u_1 <= ... <= u_p` holds exactly (ties near 1 resolved by
    /// the complements).
    pub fn is_sorted(&self) -> bool {
        self.sorted
    }

    /// `ln u_k`, taken from whichever of `u_k` and `1 - u_k` is exact.
    pub fn ln_u(&self, k: usize) -> f64 {
        ln_from_pair(self.u[k], self.complement[k])
    }

    pub fn ln_values(&self) -> Vec<f64> {
        (0..self.p()).map(|k| self.ln_u(k)).collect()
    }

    pub fn cmp_components(&self, a: usize, b: usize) -> std::cmp::Ordering {
        cmp_pair((self.u[a], self.complement[a]), (self.u[b], self.complement[b]))
    }

    /// `u_l - u_k` computed on the side of the interval with more precision.
    pub fn difference(&self, l: usize, k: usize) -> f64 {
        if self.u[l] > 0.5 && self.u[k] > 0.5 {
            self.complement[k] - self.complement[l]
        } else {
            self.u[l] - self.u[k]
        }
    }

    /// `max u / min u - 1`; equals `u_p / u_1 - 1` on a sorted tuple.
    pub fn spread(&self) -> f64 {
        let (mut lo, mut hi) = (0, 0);
        for k in 1..self.p() {
            if self.cmp_components(k, lo).is_lt() {
                lo = k;
            }
            if self.cmp_components(k, hi).is_gt() {
                hi = k;
            }
        }
        self.difference(hi, lo) / self.u[lo]
    }

    /// `min(u_k, 1 - u_k)` maximized over `k`: distance to the nearest corner
    /// of the cube, measured per component.
    pub fn boundary_distance(&self) -> f64 {
        self.u
            .iter()
            .zip(&self.complement)
            .map(|(&a, &b)| a.min(b))
            .fold(0.0, f64::max)
    }

    /// Stable ascending sort; returns the sorted tuple and `perm` with
    /// `sorted[j] = self[perm[j]]`.
    pub fn sorted_with_permutation(&self) -> (Self, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.p()).collect();
        perm.sort_by(|&a, &b| self.cmp_components(a, b));
        let u = perm.iter().map(|&i| self.u[i]).collect();
        let c = perm.iter().map(|&i| self.complement[i]).collect();
        (Self::from_pair(u, c), perm)
    }
}

/// One step of the derived system: `t'_k = prod_{i != k} (1 - t_i)`.
pub fn derived_step(t: &WeightTuple) -> Result<WeightTuple> {
    conjugate_step(&t.to_conjugate()).map(|u| u.to_weights())
}

/// One step of the conjugate system: `u'_k = 1 - prod_{i != k} u_i`.
pub fn conjugate_step(u: &ConjugateTuple) -> Result<ConjugateTuple> {
    let (next_u, next_t) = raw_step(&u.u, &u.complement);
    if let Some(index) = saturated_index(&next_u, &next_t) {
        return Err(Error::Saturation { index });
    }
    Ok(ConjugateTuple::from_pair(next_u, next_t))
}

/// Position of a conjugate tuple relative to the repelling fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Phase {
    /// Every component strictly below `alpha_p`.
    Below,
    /// Every component strictly above `alpha_p`.
    Above,
    Mixed,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Below => "BELOW",
            Phase::Above => "ABOVE",
            Phase::Mixed => "MIXED",
        }
    }

    pub fn opposite(self) -> Phase {
        match self {
            Phase::Below => Phase::Above,
            Phase::Above => Phase::Below,
            Phase::Mixed => Phase::Mixed,
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_phase(u: &ConjugateTuple, alpha: f64) -> Phase {
    let below = u.u().iter().all(|&x| x < alpha - PHASE_BOUNDARY_TOL);
    let above = u.u().iter().all(|&x| x > alpha + PHASE_BOUNDARY_TOL);
    match (below, above) {
        (true, _) => Phase::Below,
        (_, true) => Phase::Above,
        _ => Phase::Mixed,
    }
}

/// States of the conjugate system along one orbit, with per-step diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    alpha: f64,
    initial: ConjugateTuple,
    permutation: Vec<usize>,
    states: Vec<ConjugateTuple>,
    log_products: Vec<Vec<f64>>,
    gaps: Vec<Vec<f64>>,
    spread: Vec<f64>,
    phase: Vec<Phase>,
    saturation_step: Option<usize>,
}

impl TrajectoryRecord {
    /// Builds a record from an arbitrary list of states without checking that
    /// consecutive states are related by the conjugate step. Verifiers use
    /// this to be fed fixtures that are not genuine orbits.
    pub fn from_states(states: Vec<ConjugateTuple>, alpha: f64) -> Result<Self> {
        let first = states
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("a trajectory needs at least one state".into()))?;
        if let Some(bad) = states.iter().find(|s| s.p() != first.p()) {
            return Err(Error::LengthMismatch {
                expected: first.p(),
                actual: bad.p(),
            });
        }
        let mut record = Self {
            alpha,
            permutation: (0..first.p()).collect(),
            initial: first,
            states: Vec::with_capacity(states.len()),
            log_products: Vec::with_capacity(states.len()),
            gaps: Vec::with_capacity(states.len()),
            spread: Vec::with_capacity(states.len()),
            phase: Vec::with_capacity(states.len()),
            saturation_step: None,
        };
        for s in states {
            let gaps = (1..s.p()).map(|k| s.difference(k, k - 1)).collect();
            let spread = s.spread();
            record.push(s, gaps, spread);
        }
        Ok(record)
    }

    fn push(&mut self, state: ConjugateTuple, gaps: Vec<f64>, spread: f64) {
        self.log_products.push(leave_one_out_sums(&state.ln_values()));
        self.gaps.push(gaps);
        self.spread.push(spread);
        self.phase.push(classify_phase(&state, self.alpha));
        self.states.push(state);
    }

    pub fn p(&self) -> usize {
        self.initial.p()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The tuple as supplied, before sorting.
    pub fn initial(&self) -> &ConjugateTuple {
        &self.initial
    }

    /// `states[0][j] = initial[permutation[j]]`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn states(&self) -> &[ConjugateTuple] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, m: usize) -> Option<&ConjugateTuple> {
        self.states.get(m)
    }

    /// Per step, `sum_{i != k} ln u_i`: the log of the next weight `t_k`.
    pub fn log_products(&self) -> &[Vec<f64>] {
        &self.log_products
    }

    /// Per step, `u_{k+1} - u_k` for `k = 1..p-1`.
    pub fn gaps(&self) -> &[Vec<f64>] {
        &self.gaps
    }

    pub fn spread(&self) -> &[f64] {
        &self.spread
    }

    pub fn phase(&self) -> &[Phase] {
        &self.phase
    }

    /// First step whose state could not be represented inside the open cube.
    /// States from this index on are absent from the record.
    pub fn saturation_step(&self) -> Option<usize> {
        self.saturation_step
    }
}

/// Iterates the conjugate system from `u0` for up to `max_steps` steps.
///
/// The seed is stably sorted first; the record holds states `0..=max_steps`,
/// or `0..s` when step `s` saturates.
pub fn run_trajectory(u0: &ConjugateTuple, max_steps: usize, alpha: f64) -> TrajectoryRecord {
    let (sorted, permutation) = u0.sorted_with_permutation();
    let mut record = TrajectoryRecord {
        alpha,
        initial: u0.clone(),
        permutation,
        states: Vec::with_capacity(max_steps + 1),
        log_products: Vec::with_capacity(max_steps + 1),
        gaps: Vec::with_capacity(max_steps + 1),
        spread: Vec::with_capacity(max_steps + 1),
        phase: Vec::with_capacity(max_steps + 1),
        saturation_step: None,
    };
    let mut gaps: Vec<f64> = (1..sorted.p()).map(|k| sorted.difference(k, k - 1)).collect();
    let mut current = sorted;
    for m in 0..=max_steps {
        let next = (m < max_steps).then(|| conjugate_step(&current));
        let next_gaps = next.is_some().then(|| step_gaps(&current, &gaps));
        let spread = gaps.iter().sum::<f64>() / current.u()[0];
        record.push(current, gaps, spread);
        match next {
            None => break,
            Some(Ok(state)) => {
                current = state;
                gaps = next_gaps.unwrap_or_default();
            }
            Some(Err(_)) => {
                record.saturation_step = Some(m + 1);
                break;
            }
        }
    }
    record
}

/// Consecutive gaps of a sorted state carried through one step. Since
/// `u'_{k+1} - u'_k = (u_{k+1} - u_k) prod_{i != k, k+1} u_i`, the gaps keep
/// full relative precision even when the values themselves agree to many
/// digits.
pub(crate) fn step_gaps(state: &ConjugateTuple, gaps: &[f64]) -> Vec<f64> {
    let logs = state.ln_values();
    let mut prefix = vec![0.0; logs.len() + 1];
    for (k, l) in logs.iter().enumerate() {
        prefix[k + 1] = prefix[k] + l;
    }
    let mut suffix = vec![0.0; logs.len() + 1];
    for k in (0..logs.len()).rev() {
        suffix[k] = suffix[k + 1] + logs[k];
    }
    gaps.iter()
        .enumerate()
        .map(|(k, g)| g * (prefix[k] + suffix[k + 2]).exp())
        .collect()
}

/// `f_p(x) = 1 - x^(p-1)` on a (value, complement) pair.
fn comparison_map(p: usize, x: f64, c: f64) -> (f64, f64) {
    let l = (p - 1) as f64 * ln_from_pair(x, c);
    (-l.exp_m1(), l.exp())
}

/// `tau_0 = tau0`, `tau_{m+1} = 1 - tau_m^(p-1)`; returns `steps + 1` terms.
pub fn comparison_sequence(tau0: f64, p: usize, steps: usize) -> Result<Vec<f64>> {
    if p < 3 {
        return Err(Error::OrderTooSmall { p, min: 3 });
    }
    if !(tau0 > 0.0 && tau0 < 1.0) {
        return Err(Error::OutOfUnitInterval { index: 0, value: tau0 });
    }
    Ok(comparison_sequence_from_pair(tau0, 1.0 - tau0, p, steps))
}

pub(crate) fn comparison_sequence_from_pair(x0: f64, c0: f64, p: usize, steps: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(steps + 1);
    let (mut x, mut c) = (x0, c0);
    out.push(x);
    for _ in 0..steps {
        (x, c) = comparison_map(p, x, c);
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stationary::{solve_alpha, stationary_conjugate};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn derived_step_symmetric_half() {
        let t = WeightTuple::new(vec![0.5; 3]).unwrap();
        let next = derived_step(&t).unwrap();
        assert!(close(next.t(), &[0.25; 3], 1e-16));
    }

    #[test]
    fn derived_step_by_hand() {
        let t = WeightTuple::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let next = derived_step(&t).unwrap();
        assert!(close(next.t(), &[0.336, 0.378, 0.432, 0.504], 1e-15));
    }

    #[test]
    fn conjugate_step_by_hand() {
        let u = ConjugateTuple::new(vec![0.2, 0.3, 0.4]).unwrap();
        let next = conjugate_step(&u).unwrap();
        assert!(close(next.u(), &[0.88, 0.92, 0.94], 1e-15));
        assert!(close(next.complement(), &[0.12, 0.08, 0.06], 1e-16));
        assert!(next.is_sorted());
    }

    #[test]
    fn stationary_is_fixed_in_conjugate_form() {
        let s = stationary_conjugate(3).unwrap();
        let next = conjugate_step(&s).unwrap();
        assert!(close(next.u(), s.u(), 1e-14));
    }

    #[test]
    fn construction_rejects_out_of_range() {
        assert!(matches!(
            WeightTuple::new(vec![0.5, 1.0]),
            Err(Error::OutOfUnitInterval { index: 1, .. })
        ));
        assert!(matches!(
            ConjugateTuple::new(vec![0.0, 0.5]),
            Err(Error::OutOfUnitInterval { index: 0, .. })
        ));
        assert!(ConjugateTuple::new(vec![f64::NAN, 0.5]).is_err());
        assert!(matches!(
            WeightTuple::new(vec![0.5]),
            Err(Error::OrderTooSmall { p: 1, .. })
        ));
    }

    #[test]
    fn saturation_is_signalled() {
        let t = WeightTuple::new(vec![1e-200, 1e-200, 1e-200]).unwrap();
        // u' = 2e-200 is still representable; the next product of two such
        // values is far below the normal range.
        let once = derived_step(&t).unwrap();
        assert!((once.complement()[0] - 2e-200).abs() < 1e-214);
        assert_eq!(derived_step(&once), Err(Error::Saturation { index: 0 }));
    }

    #[test]
    fn pair_precision_survives_near_one() {
        // u within 1e-12 of 1 keeps its complement exactly.
        let t = WeightTuple::new(vec![1e-12, 2e-12, 3e-12]).unwrap();
        let next = derived_step(&t).unwrap();
        // t'_1 = (1 - 2e-12)(1 - 3e-12) so u'_1 = 5e-12 - 6e-24.
        assert!((next.complement()[0] - (5e-12 - 6e-24)).abs() < 1e-27);
        assert!((next.complement()[2] - (3e-12 - 2e-24)).abs() < 1e-27);
    }

    #[test]
    fn phase_classification() {
        let alpha = solve_alpha(4, 1e-14).unwrap();
        let below = ConjugateTuple::new(vec![alpha / 2.0; 4]).unwrap();
        let above = ConjugateTuple::new(vec![(1.0 + alpha) / 2.0; 4]).unwrap();
        let mixed = ConjugateTuple::new(vec![alpha / 2.0, 0.9, 0.9, 0.9]).unwrap();
        let on = ConjugateTuple::new(vec![alpha; 4]).unwrap();
        assert_eq!(classify_phase(&below, alpha), Phase::Below);
        assert_eq!(classify_phase(&above, alpha), Phase::Above);
        assert_eq!(classify_phase(&mixed, alpha), Phase::Mixed);
        assert_eq!(classify_phase(&on, alpha), Phase::Mixed);
    }

    #[test]
    fn trajectory_from_fixed_point() {
        let s = stationary_conjugate(3).unwrap();
        let rec = run_trajectory(&s, 10, s.u()[0]);
        assert_eq!(rec.len(), 11);
        assert_eq!(rec.saturation_step(), None);
        for state in rec.states() {
            assert!(close(state.u(), s.u(), 1e-14));
        }
        assert!(rec.phase().iter().all(|&ph| ph == Phase::Mixed));
    }

    #[test]
    fn trajectory_below_alternates_from_start() {
        let alpha = solve_alpha(4, 1e-14).unwrap();
        let u0 = ConjugateTuple::new(vec![0.5, 0.3, 0.6, 0.4]).unwrap();
        let rec = run_trajectory(&u0, 8, alpha);
        assert_eq!(rec.permutation(), &[1, 3, 0, 2]);
        for (m, ph) in rec.phase().iter().enumerate() {
            let expected = if m % 2 == 0 { Phase::Below } else { Phase::Above };
            assert_eq!(*ph, expected, "step {m}");
        }
    }

    #[test]
    fn trajectory_spiral_seed_spread_halves() {
        let t = WeightTuple::new(vec![0.3, 0.08, 0.06, 0.04, 0.01]).unwrap();
        let alpha = solve_alpha(5, 1e-14).unwrap();
        let rec = run_trajectory(&t.to_conjugate(), 200, alpha);
        assert!(rec.states()[0].is_sorted());
        assert!(close(rec.states()[0].u(), &[0.7, 0.92, 0.94, 0.96, 0.99], 1e-15));
        let spread = rec.spread();
        for m in 0..spread.len().saturating_sub(2) {
            assert!(spread[m + 2] < 0.5 * spread[m], "step {m}");
        }
    }

    #[test]
    fn trajectory_log_products_match_next_weights() {
        let u0 = ConjugateTuple::new(vec![0.2, 0.5, 0.7]).unwrap();
        let rec = run_trajectory(&u0, 3, solve_alpha(3, 1e-14).unwrap());
        for m in 0..rec.len() - 1 {
            let next = &rec.states()[m + 1];
            for k in 0..3 {
                let expected = next.complement()[k].ln();
                assert!((rec.log_products()[m][k] - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_steps_keeps_only_the_seed() {
        let u0 = ConjugateTuple::new(vec![0.2, 0.5, 0.7]).unwrap();
        let rec = run_trajectory(&u0, 0, 0.6);
        assert_eq!(rec.len(), 1);
    }

    #[test]
    fn comparison_sequence_values() {
        let alpha = solve_alpha(3, 1e-14).unwrap();
        let fixed = comparison_sequence(alpha, 3, 20).unwrap();
        assert!(fixed.iter().all(|&x| (x - alpha).abs() < 1e-12));

        let seq = comparison_sequence(0.5, 3, 2).unwrap();
        assert!(close(&seq, &[0.5, 0.75, 0.4375], 1e-16));

        let long = comparison_sequence(0.3, 3, 200).unwrap();
        assert!(long[200] < 1e-9);
        assert!(long[199] > 1.0 - 1e-9);
    }

    #[test]
    fn comparison_sequence_rejects_bad_input() {
        assert!(comparison_sequence(0.0, 3, 2).is_err());
        assert!(comparison_sequence(0.5, 2, 2).is_err());
    }

    #[test]
    fn weight_tuple_serde_is_a_plain_list() {
        let t = WeightTuple::new(vec![0.25, 0.5]).unwrap();
        let v: Vec<f64> = t.clone().into();
        assert_eq!(v, vec![0.25, 0.5]);
        assert!(WeightTuple::try_from(vec![2.0, 0.5]).is_err());
    }
}
