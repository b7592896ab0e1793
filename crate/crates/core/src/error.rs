use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon order p = {p} is below the required minimum {min}")]
    OrderTooSmall { p: usize, min: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("root of x^(p-1) + x - 1 for p = {p} only reached residual {residual:e} (requested {tol:e})")]
    ToleranceNotMet { p: usize, residual: f64, tol: f64 },

    #[error("component {index} = {value} is not in the open interval (0, 1)")]
    OutOfUnitInterval { index: usize, value: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("step output saturated at component {index}: the iterate reached the boundary of (0, 1)")]
    Saturation { index: usize },

    #[error("state is not sorted in non-decreasing order")]
    NotSorted,

    #[error("state is regular (u_1 = u_p); the spread ratio is undefined")]
    RegularState,

    #[error("trajectory has no state at step {0} before saturation")]
    MissingStep(usize),

    #[error("points {first} and {second} are not distinct (distance {distance:e})")]
    DuplicatePoints { first: usize, second: usize, distance: f64 },

    #[error("point {index} has dimension {actual}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },

    #[error("coordinate {coord} of point {index} is not finite")]
    NonFiniteCoordinate { index: usize, coord: usize },

    #[error("elementary symmetric index {index} out of range for {len} values")]
    SymmetricIndexOutOfRange { index: usize, len: usize },

    #[error("no step before saturation lies strictly on one side of alpha")]
    AlternationNotFound,

    #[error("{0}")]
    InvalidArgument(String),
}
