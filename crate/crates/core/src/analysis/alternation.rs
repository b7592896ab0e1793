use serde::{Deserialize, Serialize};

use crate::dynamics::{Phase, TrajectoryRecord};
use crate::error::{Error, Result};

/// Phase pattern of a trajectory from its first one-sided step onward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationReport {
    /// First step whose state lies strictly on one side of `alpha_p`.
    pub m0: usize,
    pub pattern: Vec<Phase>,
    /// Steps after `m0` whose phase is not the opposite of the previous one.
    pub violations: usize,
}

impl AlternationReport {
    /// Phase at step `m >= m0`.
    pub fn phase_at(&self, m: usize) -> Option<Phase> {
        m.checked_sub(self.m0).and_then(|i| self.pattern.get(i).copied())
    }

    /// First step `>= m0` in the below-alpha phase, if recorded.
    pub fn first_below(&self) -> Option<usize> {
        self.pattern
            .iter()
            .position(|&p| p == Phase::Below)
            .map(|i| self.m0 + i)
    }
}

pub fn detect_alternation(traj: &TrajectoryRecord) -> Result<AlternationReport> {
    let phases = traj.phase();
    let m0 = phases
        .iter()
        .position(|&p| p != Phase::Mixed)
        .ok_or(Error::AlternationNotFound)?;
    let pattern = phases[m0..].to_vec();
    let violations = pattern
        .windows(2)
        .filter(|w| w[1] != w[0].opposite() || w[1] == Phase::Mixed)
        .count();
    Ok(AlternationReport {
        m0,
        pattern,
        violations,
    })
}
