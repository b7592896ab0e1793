//! Point families, the barypolygonal map, limit points and the dual sequence.

use serde::{Deserialize, Serialize};

use crate::dynamics::{conjugate_step, step_gaps, ConjugateTuple, WeightTuple};
use crate::error::{Error, Result};

/// Minimum pairwise distance for an input family to count as distinct.
pub const DISTINCT_TOL: f64 = 1e-12;
/// Distances at or below this are treated as converged when fitting a rate.
pub const RATE_FIT_FLOOR: f64 = 1e-13;
pub const RATE_FIT_MIN_POINTS: usize = 5;

/// An ordered family of `p` points in `dim`-dimensional real affine space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointSet {
    /// Validates an input family: `p >= 2`, common dimension, finite and
    /// pairwise distinct coordinates.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let set = Self::unchecked(points)?;
        for i in 0..set.p() {
            for j in i + 1..set.p() {
                let distance = euclidean(&set.points[i], &set.points[j]);
                if distance <= DISTINCT_TOL {
                    return Err(Error::DuplicatePoints {
                        first: i,
                        second: j,
                        distance,
                    });
                }
            }
        }
        Ok(set)
    }

    /// Shape checks only; iterates of the polygon map may collapse.
    fn unchecked(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::OrderTooSmall {
                p: points.len(),
                min: 2,
            });
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidArgument("points must have dimension >= 1".into()));
        }
        for (index, pt) in points.iter().enumerate() {
            if pt.len() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    actual: pt.len(),
                });
            }
            if let Some(coord) = pt.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFiniteCoordinate { index, coord });
            }
        }
        Ok(Self { dim, points })
    }

    /// Vertices of a regular `p`-gon inscribed in the unit circle, first
    /// vertex at angle `pi / 2`.
    pub fn regular_polygon(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::OrderTooSmall { p, min: 2 });
        }
        let points = (0..p)
            .map(|k| {
                let angle = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * k as f64 / p as f64;
                vec![angle.cos(), angle.sin()]
            })
            .collect();
        Self::new(points)
    }

    pub fn p(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Largest pairwise distance between vertices.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..self.p() {
            for j in i + 1..self.p() {
                best = best.max(euclidean(&self.points[i], &self.points[j]));
            }
        }
        best
    }

    /// Applies `x -> linear * x + offset` to every point. `linear` is row-major
    /// `dim x dim`.
    pub fn map_affine(&self, linear: &[f64], offset: &[f64]) -> Result<Self> {
        if linear.len() != self.dim * self.dim || offset.len() != self.dim {
            return Err(Error::InvalidArgument(
                "affine map does not match the point dimension".into(),
            ));
        }
        let points = self.points.iter().map(|x| apply_affine(linear, offset, x)).collect();
        Self::unchecked(points)
    }
}

pub fn apply_affine(linear: &[f64], offset: &[f64], x: &[f64]) -> Vec<f64> {
    let dim = offset.len();
    (0..dim)
        .map(|r| offset[r] + (0..dim).map(|c| linear[r * dim + c] * x[c]).sum::<f64>())
        .collect()
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Equal-weight barycenter of the family.
pub fn centroid(a: &PointSet) -> Vec<f64> {
    let n = a.p() as f64;
    (0..a.dim())
        .map(|c| a.points.iter().map(|pt| pt[c]).sum::<f64>() / n)
        .collect()
}

/// Normalized barycentric weights of the limit point for conjugate state `u`.
///
/// The weight of vertex `k` is proportional to `prod_{i != k} u_i`, i.e. to
/// `1 / u_k`. They are formed from the relative excesses
/// `rho_k = u_k / min u - 1`, so nothing depends on the magnitude of `u`.
pub fn limit_weights(u: &ConjugateTuple) -> Vec<f64> {
    let lo = (1..u.p()).fold(0, |lo, k| if u.cmp_components(k, lo).is_lt() { k } else { lo });
    let rho: Vec<f64> = (0..u.p()).map(|k| u.difference(k, lo) / u.u()[lo]).collect();
    weights_from_excess(&rho)
}

/// `w_k proportional to 1 / (1 + rho_k)`.
fn weights_from_excess(rho: &[f64]) -> Vec<f64> {
    let raw: Vec<f64> = rho.iter().map(|r| 1.0 / (1.0 + r)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

fn barycenter(a: &PointSet, weights: &[f64]) -> Vec<f64> {
    (0..a.dim())
        .map(|c| a.points.iter().zip(weights).map(|(pt, w)| w * pt[c]).sum())
        .collect()
}

/// Limit point of the `t`-barypolygonal sequence of `a`.
pub fn limit_point(a: &PointSet, t: &WeightTuple) -> Result<Vec<f64>> {
    check_len(a.p(), t.p())?;
    Ok(barycenter(a, &limit_weights(&t.to_conjugate())))
}

/// One application of the barypolygonal map: vertex `k` becomes the
/// barycenter of `(B_k; t_k)` and `(B_{k+1}; 1 - t_k)`, indices mod `p`.
pub fn polygon_step(b: &PointSet, t: &WeightTuple) -> Result<PointSet> {
    check_len(b.p(), t.p())?;
    let p = b.p();
    let points = (0..p)
        .map(|k| {
            let (here, next) = (&b.points[k], &b.points[(k + 1) % p]);
            let (wk, wn) = (t.t()[k], t.complement()[k]);
            here.iter().zip(next).map(|(x, y)| wk * x + wn * y).collect()
        })
        .collect();
    Ok(PointSet { dim: b.dim, points })
}

/// The limit points `G_m` of the successive derived sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSequenceRecord {
    pub points: Vec<Vec<f64>>,
    pub distances_to_centroid: Vec<f64>,
    /// Normalized barycentric weights used for each `G_m`.
    pub weights: Vec<Vec<f64>>,
    /// Least-squares slope of `ln distance` against `m`.
    pub fitted_rate: Option<f64>,
    /// First derived order whose raw weights leave the representable range.
    /// Later orders are still recorded, from the weight ratios alone.
    pub saturation_step: Option<usize>,
}

/// Sorted conjugate state as carried along the dual sequence.
enum DualState {
    /// Representable state with its consecutive gaps `u_{k+1} - u_k`.
    Pairs(ConjugateTuple, Vec<f64>),
    /// Every `u_k` below the representable range; `rho_k = u_k / u_1 - 1`.
    Low(Vec<f64>),
    /// Every `1 - u_k` below the representable range; `gamma_k` is
    /// `(1 - u_k) / (1 - u_1)` and `delta_k = 1 - gamma_k`.
    High(Vec<f64>, Vec<f64>),
}

fn cumulative_excess(gaps: &[f64], scale: f64) -> Vec<f64> {
    let mut rho = Vec::with_capacity(gaps.len() + 1);
    let mut acc = 0.0;
    rho.push(0.0);
    for g in gaps {
        acc += g;
        rho.push(acc / scale);
    }
    rho
}

fn low_to_high(rho: &[f64]) -> DualState {
    // (1 - u'_k) / (1 - u'_1) = u_1 / u_k exactly
    let gamma = rho.iter().map(|r| 1.0 / (1.0 + r)).collect();
    let delta = rho.iter().map(|r| r / (1.0 + r)).collect();
    DualState::High(gamma, delta)
}

fn high_to_low(gamma: &[f64], delta: &[f64]) -> DualState {
    // u'_k = sum_{i != k} (1 - u_i) up to relative terms of the size of 1 - u_i
    let rest: f64 = gamma[1..].iter().sum();
    DualState::Low(delta.iter().map(|d| d / rest).collect())
}

impl DualState {
    fn weights(&self) -> Vec<f64> {
        match self {
            DualState::Pairs(state, gaps) => weights_from_excess(&cumulative_excess(gaps, state.u()[0])),
            DualState::Low(rho) => weights_from_excess(rho),
            DualState::High(gamma, _) => vec![1.0 / gamma.len() as f64; gamma.len()],
        }
    }

    /// Next state and whether this step left the representable range.
    fn step(self) -> Option<(DualState, bool)> {
        Some(match self {
            DualState::Pairs(state, gaps) => match conjugate_step(&state) {
                Ok(next) => {
                    let next_gaps = step_gaps(&state, &gaps);
                    (DualState::Pairs(next, next_gaps), false)
                }
                Err(_) if state.u().iter().all(|&x| x <= 0.5) => {
                    (low_to_high(&cumulative_excess(&gaps, state.u()[0])), true)
                }
                Err(_) if state.u().iter().all(|&x| x > 0.5) => {
                    let c1 = state.complement()[0];
                    let gamma: Vec<f64> = state.complement().iter().map(|c| c / c1).collect();
                    let delta = cumulative_excess(&gaps, c1);
                    (high_to_low(&gamma, &delta), true)
                }
                Err(_) => return None,
            },
            DualState::Low(rho) => (low_to_high(&rho), false),
            DualState::High(gamma, delta) => (high_to_low(&gamma, &delta), false),
        })
    }
}

/// Dual sequence `G_0, ..., G_max_order` of the `t0`-barypolygonal sequence of `a`.
///
/// Past saturation the orbit is continued through the ratio recursion it
/// converges to, which needs only the relative spacing of the components.
pub fn dual_sequence(a: &PointSet, t0: &WeightTuple, max_order: usize) -> Result<DualSequenceRecord> {
    check_len(a.p(), t0.p())?;
    if a.p() < 3 {
        return Err(Error::OrderTooSmall { p: a.p(), min: 3 });
    }
    let center = centroid(a);
    let offsets: Vec<Vec<f64>> = a
        .points
        .iter()
        .map(|pt| pt.iter().zip(&center).map(|(x, c)| x - c).collect())
        .collect();

    let mut record = DualSequenceRecord {
        points: Vec::with_capacity(max_order + 1),
        distances_to_centroid: Vec::with_capacity(max_order + 1),
        weights: Vec::with_capacity(max_order + 1),
        fitted_rate: None,
        saturation_step: None,
    };
    let (sorted, permutation) = t0.to_conjugate().sorted_with_permutation();
    let gaps = (1..sorted.p()).map(|k| sorted.difference(k, k - 1)).collect();
    let mut state = DualState::Pairs(sorted, gaps);
    for m in 0..=max_order {
        let mut w = vec![0.0; a.p()];
        for (j, wj) in state.weights().into_iter().enumerate() {
            w[permutation[j]] = wj;
        }
        let displacement: Vec<f64> = (0..a.dim())
            .map(|c| offsets.iter().zip(&w).map(|(o, wk)| wk * o[c]).sum())
            .collect();
        record
            .distances_to_centroid
            .push(displacement.iter().map(|d| d * d).sum::<f64>().sqrt());
        record.points.push(barycenter(a, &w));
        record.weights.push(w);
        if m == max_order {
            break;
        }
        match state.step() {
            Some((next, saturated)) => {
                if saturated {
                    record.saturation_step = Some(m + 1);
                }
                state = next;
            }
            None => {
                record.saturation_step.get_or_insert(m + 1);
                break;
            }
        }
    }
    record.fitted_rate = fit_log_rate(&record.distances_to_centroid);
    Ok(record)
}

/// Slope of `ln d_m` against `m` over the final half (at least five points) of
/// the samples above [`RATE_FIT_FLOOR`]. `None` with fewer than five.
pub fn fit_log_rate(distances: &[f64]) -> Option<f64> {
    let samples: Vec<(f64, f64)> = distances
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > RATE_FIT_FLOOR)
        .map(|(m, d)| (m as f64, d.ln()))
        .collect();
    if samples.len() < RATE_FIT_MIN_POINTS {
        return None;
    }
    let window = (samples.len() / 2).max(RATE_FIT_MIN_POINTS);
    least_squares_slope(&samples[samples.len() - window..])
}

fn least_squares_slope(samples: &[(f64, f64)]) -> Option<f64> {
    let n = samples.len() as f64;
    let mean_x = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let mean_y = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mean_x).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mean_x) * (s.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointSet {
        PointSet::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn centroid_of_square_and_triangle() {
        assert_eq!(centroid(&square()), vec![0.5, 0.5]);
        let tri = PointSet::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let c = centroid(&tri);
        assert!((c[0] - 1.0 / 3.0).abs() < 1e-16 && (c[1] - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn centroid_translates() {
        let shifted = square().map_affine(&[1.0, 0.0, 0.0, 1.0], &[3.0, -2.0]).unwrap();
        let c = centroid(&shifted);
        assert!((c[0] - 3.5).abs() < 1e-15 && (c[1] + 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_point_sets() {
        assert!(matches!(
            PointSet::new(vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]]),
            Err(Error::DuplicatePoints {
                first: 0,
                second: 1,
                ..
            })
        ));
        assert!(matches!(
            PointSet::new(vec![vec![0.0, 0.0], vec![1.0]]),
            Err(Error::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            PointSet::new(vec![vec![0.0], vec![f64::INFINITY]]),
            Err(Error::NonFiniteCoordinate { index: 1, coord: 0 })
        ));
        assert!(PointSet::new(vec![vec![0.0]]).is_err());
    }

    #[test]
    fn equal_weights_give_centroid() {
        let t = WeightTuple::new(vec![0.3; 4]).unwrap();
        let g = limit_point(&square(), &t).unwrap();
        assert!((g[0] - 0.5).abs() < 1e-15 && (g[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn limit_weights_by_hand() {
        let t = WeightTuple::new(vec![0.5, 0.5, 0.9]).unwrap();
        let w = limit_weights(&t.to_conjugate());
        let expected = [1.0 / 7.0, 1.0 / 7.0, 5.0 / 7.0];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn limit_point_length_mismatch() {
        let t = WeightTuple::new(vec![0.3; 3]).unwrap();
        assert!(matches!(
            limit_point(&square(), &t),
            Err(Error::LengthMismatch { expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn polygon_step_midpoints() {
        let t = WeightTuple::new(vec![0.5; 4]).unwrap();
        let next = polygon_step(&square(), &t).unwrap();
        assert_eq!(
            next.points(),
            &[vec![0.5, 0.0], vec![1.0, 0.5], vec![0.5, 1.0], vec![0.0, 0.5]]
        );
    }

    #[test]
    fn unequal_weights_move_the_centroid() {
        let two = PointSet::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let t = WeightTuple::new(vec![0.1, 0.9]).unwrap();
        let next = polygon_step(&two, &t).unwrap();
        // vertex 0 -> 0.1*0 + 0.9*1, vertex 1 -> 0.9*1 + 0.1*0
        assert!((centroid(&next)[0] - 0.9).abs() < 1e-15);
        let even = WeightTuple::new(vec![0.3, 0.3]).unwrap();
        assert!((centroid(&polygon_step(&two, &even).unwrap())[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn regular_weights_keep_dual_on_centroid() {
        let a = PointSet::regular_polygon(5).unwrap();
        let t = WeightTuple::new(vec![0.2; 5]).unwrap();
        let rec = dual_sequence(&a, &t, 30).unwrap();
        assert!(rec.distances_to_centroid.iter().all(|&d| d < 1e-14));
        assert_eq!(rec.fitted_rate, None);
    }

    #[test]
    fn dual_requires_three_points() {
        let two = PointSet::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let t = WeightTuple::new(vec![0.1, 0.9]).unwrap();
        assert!(dual_sequence(&two, &t, 3).is_err());
    }

    #[test]
    fn rate_fit_recovers_geometric_decay() {
        let d: Vec<f64> = (0..40).map(|m| 0.5_f64.powi(m)).collect();
        let rate = fit_log_rate(&d).unwrap();
        assert!((rate - 0.5_f64.ln()).abs() < 1e-12);
        assert_eq!(fit_log_rate(&[1.0, 0.5, 0.25, 0.0, 0.0]), None);
    }
}
