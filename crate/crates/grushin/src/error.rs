use thiserror::Error;

/// Errors surfaced by constructors and preconditioned operations.
///
/// Most operations in this crate are total on validated inputs; the variants
/// below cover the construction-time invariants and the handful of
/// operations with genuine preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate must be finite, got {0}")]
    NonFiniteCoordinate(f64),
    #[error("metric exponent alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("polygonal path needs at least two vertices, got {0}")]
    PathTooShort(usize),
    #[error("consecutive path vertices must be distinct (vertices {0} and {1} coincide)")]
    DuplicateVertex(usize, usize),
    #[error("paths can only be concatenated where the first ends and the second begins")]
    PathMismatch,
    #[error("region is empty: require x_min < x_max and y_min < y_max")]
    EmptyRegion,
    #[error("point ({x}, {y}) lies outside the region")]
    OutsideRegion { x: f64, y: f64 },
    #[error("grid resolution must be at least {min}, got {got}")]
    ResolutionTooSmall { min: u32, got: u32 },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("need at least 2 bins, got {0}")]
    TooFewBins(usize),
    #[error("degenerate input: the two points coincide")]
    DegeneratePair,
    #[error("weight exponent beta = {0} has no Grushin parameter: need -2 < beta < 0")]
    BetaOutOfRange(f64),
    #[error("density probe on the axis (u = 0): the weight is unbounded there")]
    AxisSingularity,
    #[error("weight |x|^beta is not locally integrable on balls meeting the axis for beta = {0} <= -1")]
    NonIntegrableWeight(f64),
}
