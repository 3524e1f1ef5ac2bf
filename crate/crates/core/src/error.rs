use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("loop sample count mismatch: {0} vs {1}")]
    SampleMismatch(usize, usize),
    #[error("loop sample count {0} must be even and at least 16")]
    BadSampleCount(usize),
    #[error("form degree {degree} exceeds chart dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("chart dimension {dim} is below the required {required}")]
    ChartTooSmall { dim: usize, required: usize },
    #[error("resolution {0} must be odd and at least 9")]
    BadResolution(usize),
    #[error("axis {axis} out of range for a {dim}-dimensional chart")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("expected a top-degree form ({dim}), got degree {degree}")]
    NotTopDegree { degree: usize, dim: usize },
    #[error("points lie over different base points (distance {0:e})")]
    BaseMismatch(f64),
    #[error("face maps are only provided for p in {{1, 2}}, got {0}")]
    UnsupportedSimplicialDegree(usize),
    #[error("the reduced formula requires a_U = 0")]
    NonzeroRealConnection,
    #[error("grid shape mismatch")]
    GridMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
