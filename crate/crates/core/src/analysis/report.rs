//! Named verifier checks, their JSON-serializable results, and the random
//! seed sweep that runs them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::alternation::detect_alternation;
use super::lemma::{
    check_geometric_ratio_bound, check_ratio_monotonicity, check_sortedness, check_spread_halving,
    check_t_ratio_transfer, lemma_c_certificates, ScanOutcome,
};
use super::limits::{comparison_domination, even_odd_limits, LimitPattern};
use super::spectral::spectral_check;
use crate::dynamics::{conjugate_step, run_trajectory, ConjugateTuple, TrajectoryRecord, WeightTuple};
use crate::error::{Error, Result};
use crate::geometry::{dual_sequence, PointSet};
use crate::stationary::{certificate, solve_alpha, stationary_conjugate, theta, DEFAULT_ALPHA_TOL};

/// Fixed-point residual allowed for the stationary tuple.
pub const FIXED_POINT_TOL: f64 = 1e-14;
/// Boundary distance at which even/odd limits count as decided.
pub const LIMIT_TOL: f64 = 1e-6;
/// Dual-sequence distance that counts as converged.
pub const DUAL_CONVERGED: f64 = 1e-8;
pub const INSTABILITY_EPS: f64 = 1e-8;
pub const INSTABILITY_STEPS: usize = 5;
/// Allowed relative deviation of the observed growth factor from `|(1-p) beta|`.
pub const INSTABILITY_RTOL: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Stationary,
    Spectral,
    FixedPoint,
    Instability,
    LemmaA,
    LemmaB,
    LemmaC,
    LemmaD,
    TRatioTransfer,
    Theorem2,
    Theorem3,
    Theorem4,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::Stationary,
        CheckName::Spectral,
        CheckName::FixedPoint,
        CheckName::Instability,
        CheckName::LemmaA,
        CheckName::LemmaB,
        CheckName::LemmaC,
        CheckName::LemmaD,
        CheckName::TRatioTransfer,
        CheckName::Theorem2,
        CheckName::Theorem3,
        CheckName::Theorem4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Stationary => "stationary",
            CheckName::Spectral => "spectral",
            CheckName::FixedPoint => "fixed_point",
            CheckName::Instability => "instability",
            CheckName::LemmaA => "lemma_a",
            CheckName::LemmaB => "lemma_b",
            CheckName::LemmaC => "lemma_c",
            CheckName::LemmaD => "lemma_d",
            CheckName::TRatioTransfer => "t_ratio_transfer",
            CheckName::Theorem2 => "theorem2",
            CheckName::Theorem3 => "theorem3",
            CheckName::Theorem4 => "theorem4",
        }
    }

    fn per_order(self) -> bool {
        matches!(
            self,
            CheckName::Stationary | CheckName::Spectral | CheckName::FixedPoint | CheckName::Instability
        )
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

/// Outcome of one named check, possibly aggregated over many runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub passed: bool,
    pub runs: usize,
    pub failures: usize,
    /// Numeric witnesses; aggregation keeps the maximum of each key.
    pub witness: BTreeMap<String, f64>,
    /// Description of the first failure, if any.
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: CheckName, passed: bool) -> Self {
        Self {
            name,
            passed,
            runs: 1,
            failures: usize::from(!passed),
            witness: BTreeMap::new(),
            detail: None,
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.witness.insert(key.to_owned(), value);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn failed_with(name: CheckName, detail: impl Into<String>) -> Self {
        Self::new(name, false).with_detail(detail)
    }

    pub fn merge(&mut self, other: CheckResult) {
        debug_assert_eq!(self.name, other.name);
        self.passed &= other.passed;
        self.runs += other.runs;
        self.failures += other.failures;
        for (key, value) in other.witness {
            let slot = self.witness.entry(key).or_insert(f64::NEG_INFINITY);
            if value > *slot || value.is_nan() {
                *slot = value;
            }
        }
        if self.detail.is_none() {
            self.detail = other.detail;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn from_results(results: impl IntoIterator<Item = CheckResult>) -> Self {
        let mut merged: BTreeMap<CheckName, CheckResult> = BTreeMap::new();
        for r in results {
            match merged.get_mut(&r.name) {
                Some(existing) => existing.merge(r),
                None => {
                    merged.insert(r.name, r);
                }
            }
        }
        let checks: Vec<CheckResult> = merged.into_values().collect();
        Self {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn scan_result(name: CheckName, outcome: ScanOutcome) -> CheckResult {
    let mut r = CheckResult::new(name, outcome.holds).with("worst_excess", outcome.worst_excess);
    if let Some((m, k, l)) = outcome.first_violation {
        r = r.with_detail(format!("first violation at step {m}, components ({k}, {l})"));
    }
    r
}

/// Root accuracy and the two inequalities implying instability.
pub fn check_stationary(p: usize) -> CheckResult {
    let name = CheckName::Stationary;
    let cert = match certificate(p) {
        Ok(c) => c,
        Err(e) => return CheckResult::failed_with(name, e.to_string()),
    };
    let residual = theta(p, cert.alpha).abs();
    let upper = 1.0 - 1.0 / p as f64;
    let passed = residual <= DEFAULT_ALPHA_TOL && cert.alpha < upper && cert.lambda_repulsive < -1.0;
    CheckResult::new(name, passed)
        .with("alpha_residual", residual)
        .with("alpha_gap_to_upper", cert.alpha - upper)
        .with("lambda_repulsive", cert.lambda_repulsive)
}

pub fn check_spectral(p: usize) -> CheckResult {
    match spectral_check(p) {
        Ok(r) => {
            let mut out = CheckResult::new(CheckName::Spectral, r.passed)
                .with("ones_residual", r.ones_residual)
                .with("sum_zero_residual", r.sum_zero_residual);
            if let Some(d) = r.det_at_contractive {
                out = out.with("abs_det_contractive", d.abs());
            }
            if let Some(d) = r.det_at_repulsive {
                out = out.with("abs_det_repulsive", d.abs());
            }
            out
        }
        Err(e) => CheckResult::failed_with(CheckName::Spectral, e.to_string()),
    }
}

pub fn check_fixed_point(p: usize) -> CheckResult {
    let name = CheckName::FixedPoint;
    let result = stationary_conjugate(p).and_then(|s| {
        let next = conjugate_step(&s)?;
        Ok(s.u()
            .iter()
            .zip(next.u())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    });
    match result {
        Ok(residual) => CheckResult::new(name, residual <= FIXED_POINT_TOL).with("residual", residual),
        Err(e) => CheckResult::failed_with(name, e.to_string()),
    }
}

/// Perturbs the fixed point along the all-ones direction and measures the
/// per-step growth of the sup-norm distance.
pub fn instability_growth(p: usize) -> Result<Vec<f64>> {
    let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL)?;
    let mut state = ConjugateTuple::new(vec![alpha + INSTABILITY_EPS; p])?;
    let distance = |s: &ConjugateTuple| s.u().iter().map(|x| (x - alpha).abs()).fold(0.0, f64::max);
    let mut prev = distance(&state);
    let mut factors = Vec::with_capacity(INSTABILITY_STEPS);
    for _ in 0..INSTABILITY_STEPS {
        state = conjugate_step(&state)?;
        let d = distance(&state);
        factors.push(d / prev);
        prev = d;
    }
    Ok(factors)
}

pub fn check_instability(p: usize) -> CheckResult {
    let name = CheckName::Instability;
    let (cert, factors) = match certificate(p).and_then(|c| Ok((c, instability_growth(p)?))) {
        Ok(v) => v,
        Err(e) => return CheckResult::failed_with(name, e.to_string()),
    };
    let expected = cert.lambda_repulsive.abs();
    let worst = factors
        .iter()
        .map(|f| (f - expected).abs() / expected)
        .fold(0.0, f64::max);
    CheckResult::new(name, worst <= INSTABILITY_RTOL)
        .with("growth_relative_deviation", worst)
        .with("expected_growth", expected)
}

/// Per-order checks that do not depend on a seed.
pub fn check_order(p: usize, only: Option<CheckName>) -> Vec<CheckResult> {
    let wanted = |c: CheckName| only.map_or(true, |o| o == c);
    let mut out = Vec::new();
    if wanted(CheckName::Stationary) {
        out.push(check_stationary(p));
    }
    if wanted(CheckName::Spectral) {
        out.push(check_spectral(p));
    }
    if wanted(CheckName::FixedPoint) {
        out.push(check_fixed_point(p));
    }
    if wanted(CheckName::Instability) {
        out.push(check_instability(p));
    }
    out
}

fn check_lemma_c(traj: &TrajectoryRecord) -> CheckResult {
    let certs = lemma_c_certificates(traj);
    let halving = check_spread_halving(traj);
    let bad_cert = certs.iter().find(|c| !c.holds());
    let passed = bad_cert.is_none() && halving.holds;
    let max = |f: fn(&super::lemma::LemmaCCertificate) -> f64| certs.iter().map(f).fold(0.0, f64::max);
    let mut r = CheckResult::new(CheckName::LemmaC, passed)
        .with("certificates", certs.len() as f64)
        .with("max_contraction", max(|c| c.contraction))
        .with("max_ratio_bound", max(|c| c.ratio_bound))
        .with(
            "min_ratio_margin",
            certs.iter().map(|c| c.ratio_margin).fold(f64::INFINITY, f64::min),
        )
        .with("max_identity_residual", max(|c| c.residual_first.max(c.residual_last)))
        .with("halving_worst_excess", halving.worst_excess);
    if let Some(c) = bad_cert {
        r = r.with_detail(format!("certificate fails at step {}: {c:?}", c.m));
    } else if let Some((m, _, _)) = halving.first_violation {
        r = r.with_detail(format!("spread fails to halve between steps {m} and {}", m + 2));
    }
    r
}

fn check_theorem3(traj: &TrajectoryRecord) -> CheckResult {
    match detect_alternation(traj) {
        Ok(rep) => CheckResult::new(CheckName::Theorem3, rep.violations == 0)
            .with("m0", rep.m0 as f64)
            .with("violations", rep.violations as f64),
        Err(e) => CheckResult::failed_with(CheckName::Theorem3, e.to_string()),
    }
}

fn check_theorem4(traj: &TrajectoryRecord) -> CheckResult {
    let name = CheckName::Theorem4;
    let pattern = match even_odd_limits(traj, LIMIT_TOL) {
        Ok(p) => p,
        Err(e) => return CheckResult::failed_with(name, e.to_string()),
    };
    let alternation = match detect_alternation(traj) {
        Ok(a) => a,
        Err(e) => return CheckResult::failed_with(name, e.to_string()),
    };
    // a below-alpha state at step m sends the parity of m to zero
    let below_parity_even = alternation.first_below().map(|m| m % 2 == 0).unwrap_or(false);
    let expected = if below_parity_even {
        LimitPattern::EvenToZeroOddToOne
    } else {
        LimitPattern::EvenToOneOddToZero
    };
    let n = traj.len();
    let final_distance = traj.states()[n.saturating_sub(2)..]
        .iter()
        .map(ConjugateTuple::boundary_distance)
        .fold(0.0, f64::max);
    let domination = comparison_domination(traj);
    let (dom_ok, dom_excess, dom_detail) = match &domination {
        Ok(d) => (d.violations == 0, d.worst_excess, None),
        Err(e) => (false, f64::NAN, Some(e.to_string())),
    };
    let passed = pattern == expected && final_distance < LIMIT_TOL && dom_ok;
    let mut r = CheckResult::new(name, passed)
        .with("final_boundary_distance", final_distance)
        .with("last_step", (n - 1) as f64)
        .with("domination_worst_excess", dom_excess);
    if !passed {
        r = r.with_detail(dom_detail.unwrap_or_else(|| format!("limit pattern {pattern:?}, expected {expected:?}")));
    }
    r
}

/// Runs the trajectory-level verifiers.
pub fn check_trajectory(traj: &TrajectoryRecord, only: Option<CheckName>) -> Vec<CheckResult> {
    let wanted = |c: CheckName| only.map_or(true, |o| o == c);
    let mut out = Vec::new();
    if wanted(CheckName::LemmaA) {
        out.push(scan_result(CheckName::LemmaA, check_sortedness(traj)));
    }
    if wanted(CheckName::LemmaB) {
        out.push(scan_result(CheckName::LemmaB, check_ratio_monotonicity(traj)));
    }
    if wanted(CheckName::LemmaC) {
        out.push(check_lemma_c(traj));
    }
    if wanted(CheckName::LemmaD) {
        out.push(scan_result(CheckName::LemmaD, check_geometric_ratio_bound(traj)));
    }
    if wanted(CheckName::TRatioTransfer) {
        out.push(scan_result(CheckName::TRatioTransfer, check_t_ratio_transfer(traj)));
    }
    if wanted(CheckName::Theorem3) {
        out.push(check_theorem3(traj));
    }
    if wanted(CheckName::Theorem4) {
        out.push(check_theorem4(traj));
    }
    out
}

/// Dual sequence of `t0` on the regular `p`-gon converges to the centroid.
pub fn check_dual(t0: &WeightTuple, max_order: usize) -> CheckResult {
    let name = CheckName::Theorem2;
    let result = PointSet::regular_polygon(t0.p()).and_then(|a| dual_sequence(&a, t0, max_order));
    let rec = match result {
        Ok(r) => r,
        Err(e) => return CheckResult::failed_with(name, e.to_string()),
    };
    // both parities must have converged, so look at the last two orders
    let tail = rec.distances_to_centroid.len().saturating_sub(2);
    let final_distance = rec.distances_to_centroid[tail..].iter().copied().fold(0.0, f64::max);
    let weight_sum_error = rec
        .weights
        .iter()
        .map(|w| (w.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let rate_ok = rec.fitted_rate.map_or(true, |r| r < 0.0);
    let passed = final_distance < DUAL_CONVERGED && rate_ok && weight_sum_error <= 1e-14;
    let mut r = CheckResult::new(name, passed)
        .with("final_distance", final_distance)
        .with("weight_sum_error", weight_sum_error);
    if let Some(rate) = rec.fitted_rate {
        r = r.with("fitted_rate", rate);
    }
    if !passed {
        r = r.with_detail(format!(
            "final distance {final_distance:e}, fitted rate {:?}",
            rec.fitted_rate
        ));
    }
    r
}

/// Replaces the middle state of a trajectory by its reversal. Used to make
/// sure the verifiers notice a record that is not a genuine orbit.
pub fn inject_fault(traj: &TrajectoryRecord) -> TrajectoryRecord {
    let mut states = traj.states().to_vec();
    let mid = states.len() / 2;
    let reversed: Vec<f64> = states[mid].u().iter().rev().copied().collect();
    if let Ok(bad) = ConjugateTuple::new(reversed) {
        states[mid] = bad;
    }
    TrajectoryRecord::from_states(states, traj.alpha()).unwrap_or_else(|_| traj.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub orders: Vec<usize>,
    pub seeds_per_order: usize,
    pub seed: u64,
    pub max_steps: usize,
    pub only: Option<CheckName>,
    pub inject_fault: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            orders: (3..=8).collect(),
            seeds_per_order: 100,
            seed: 0,
            max_steps: 200,
            only: None,
            inject_fault: false,
        }
    }
}

/// Uniform random seed in `(0, 1)^p`, sorted ascending.
pub fn random_sorted_seed<R: Rng>(rng: &mut R, p: usize) -> ConjugateTuple {
    let mut u: Vec<f64> = (0..p)
        .map(|_| loop {
            let x: f64 = rng.gen();
            if x > 0.0 {
                break x;
            }
        })
        .collect();
    u.sort_by(f64::total_cmp);
    ConjugateTuple::new(u).expect("uniform draws lie in (0, 1)")
}

/// Verifies one seed: trajectory-level checks plus the dual sequence.
pub fn verify_seed(
    u0: &ConjugateTuple,
    max_steps: usize,
    only: Option<CheckName>,
    inject: bool,
) -> Result<Vec<CheckResult>> {
    let p = u0.p();
    let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL)?;
    let mut traj = run_trajectory(u0, max_steps, alpha);
    if inject {
        traj = inject_fault(&traj);
    }
    let mut out = check_trajectory(&traj, only);
    if only.map_or(true, |o| o == CheckName::Theorem2) {
        out.push(check_dual(&u0.to_weights(), max_steps));
    }
    Ok(out)
}

pub fn run_sweep(config: &SweepConfig) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut results = Vec::new();
    for &p in &config.orders {
        if config.only.map_or(true, CheckName::per_order) {
            results.extend(check_order(p, config.only));
        }
        if config.only.is_some_and(CheckName::per_order) {
            continue;
        }
        for _ in 0..config.seeds_per_order {
            let u0 = random_sorted_seed(&mut rng, p);
            results.extend(verify_seed(&u0, config.max_steps, config.only, config.inject_fault)?);
        }
    }
    Ok(VerificationReport::from_results(results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
        }
        assert!("lemma_z".parse::<CheckName>().is_err());
    }

    #[test]
    fn per_order_checks_pass() {
        for p in 3..=8 {
            for r in check_order(p, None) {
                assert!(r.passed, "p = {p}: {r:?}");
            }
        }
    }

    #[test]
    fn small_sweep_passes() {
        let config = SweepConfig {
            seeds_per_order: 5,
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.checks.len(), CheckName::ALL.len());
    }

    #[test]
    fn injected_fault_is_reported() {
        let config = SweepConfig {
            orders: vec![5],
            seeds_per_order: 3,
            inject_fault: true,
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        assert!(!report.passed);
        assert!(!report.check(CheckName::LemmaA).unwrap().passed);
    }

    #[test]
    fn single_check_mode() {
        let config = SweepConfig {
            orders: vec![5],
            seeds_per_order: 4,
            only: Some(CheckName::LemmaC),
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].name, CheckName::LemmaC);
        assert_eq!(report.checks[0].runs, 4);
    }
}
