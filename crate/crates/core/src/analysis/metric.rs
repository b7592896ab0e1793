use serde::{Deserialize, Serialize};

use crate::dynamics::{raw_step, WeightTuple};
use crate::error::{Error, Result};

/// Truncated sup-distance between two derived-system orbits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedDistance {
    pub value: f64,
    /// Last orbit index included; the true supremum is at least `value`.
    pub horizon: usize,
}

/// `max_{k, n <= horizon} |t1_k^(n) - t2_k^(n)|` along the two orbits of the
/// derived system.
///
/// Orbits are continued through the boundary of the cube (a component that
/// reaches 0 or 1 keeps bouncing between the two), so both orbits always
/// contribute `horizon + 1` terms. This is a lower bound for the supremum
/// over the infinite orbits.
pub fn sequence_metric(t1: &WeightTuple, t2: &WeightTuple, horizon: usize) -> Result<TruncatedDistance> {
    if t1.p() != t2.p() {
        return Err(Error::LengthMismatch {
            expected: t1.p(),
            actual: t2.p(),
        });
    }
    // pairs are (u, t): conjugate value first, weight second
    let mut a = (t1.complement().to_vec(), t1.t().to_vec());
    let mut b = (t2.complement().to_vec(), t2.t().to_vec());
    let mut value = 0.0_f64;
    for n in 0..=horizon {
        for (x, y) in a.1.iter().zip(&b.1) {
            value = value.max((x - y).abs());
        }
        if n < horizon {
            a = raw_step(&a.0, &a.1);
            b = raw_step(&b.0, &b.1);
        }
    }
    Ok(TruncatedDistance { value, horizon })
}
