use thiserror::Error;

/// Errors shared by every operation in the crate.
///
/// Index arguments always refer to 0-based point positions in the space the
/// operation was handed (for [`Error::TriangleViolation`] raised while
/// building a disjoint union, they refer to positions in the union).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a metric space must contain at least one point")]
    EmptySpace,

    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),

    #[error("expected a {expected}x{expected} matrix, found row of length {found} at index {row}")]
    DimensionMismatch {
        expected: usize,
        row: usize,
        found: usize,
    },

    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),

    #[error("negative distance at ({0}, {1})")]
    NegativeDistance(usize, usize),

    #[error("nonzero diagonal entry at ({0}, {0})")]
    NonzeroDiagonal(usize),

    #[error("distinct points {0} and {1} are at distance zero")]
    ZeroOffDiagonal(usize, usize),

    #[error("triangle inequality fails: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),

    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subset of points must be nonempty")]
    EmptySubset,

    #[error("expected at least one {0}")]
    EmptyInput(&'static str),

    #[error("map of length {found} does not match source of {expected} points")]
    MapLengthMismatch { expected: usize, found: usize },

    #[error("map is not distance-preserving between points {0} and {1}")]
    NotIsometric(usize, usize),

    #[error("correspondence does not cover {side} point {index}")]
    NotSurjective { side: &'static str, index: usize },

    #[error("instance size {0} exceeds the configured limit {1}")]
    SizeLimitExceeded(usize, usize),

    #[error("slack {slack} is below half the correspondence distortion {distortion}")]
    SlackTooSmall { slack: String, distortion: String },

    #[error("consecutive GH distance at step {step} is {actual}, above the declared bound {bound}")]
    CauchyBoundViolated {
        step: usize,
        actual: String,
        bound: String,
    },

    #[error("no declared bound for step {0}")]
    CauchyBoundMissing(usize),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
