//! Derived systems, conjugate systems and dual sequences of barypolygonal
//! sequences.
//!
//! A `t`-barypolygonal sequence of a point family `A_1..A_p` repeatedly
//! replaces each vertex by a two-point barycenter and converges to a limit
//! point. Mapping the weights through `t'_k = prod_{i != k} (1 - t_i)` gives
//! the derived sequence of the next order; the limit points `G_m` of the
//! successive derived sequences form the dual sequence, which converges to
//! the centroid of the family.
//!
//! - [`stationary`]: the repelling fixed point and its spectrum.
//! - [`dynamics`]: the derived and conjugate steps, trajectories, phases.
//! - [`geometry`]: point families, the polygon map, limit points, dual sequences.
//! - [`analysis`]: verifiers for the structural properties of the orbits.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod stationary;

pub use dynamics::{
    classify_phase, comparison_sequence, conjugate_step, derived_step, run_trajectory, ConjugateTuple, Phase,
    TrajectoryRecord, WeightTuple,
};
pub use error::{Error, Result};
pub use geometry::{centroid, dual_sequence, limit_point, limit_weights, polygon_step, DualSequenceRecord, PointSet};
pub use stationary::{certificate, solve_alpha, stationary_conjugate, stationary_point, StationaryCertificate};
