use thiserror::Error;

/// Errors produced by the polytope pipeline and its file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unsupported dimension {0}; only 2 and 3 are supported")]
    UnsupportedDimension(usize),

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("interior point margin {margin:e} does not exceed tolerance {tol:e}")]
    NotInterior { margin: f64, tol: f64 },

    #[error("half-space system is unbounded")]
    Unbounded,

    #[error("query lies inside an obstacle: cloud point {index} is {distance:e} m away")]
    QueryInsideObstacle { index: usize, distance: f64 },

    #[error("point at distance {distance} is outside the flip domain (2R = {limit})")]
    Domain { distance: f64, limit: f64 },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("query is not wrapped by the cloud: an open half-space through it holds no points")]
    NotWrapped,

    #[error("matrix is not a rotation (orthonormality error {0:e})")]
    InvalidRotation(f64),

    #[error("infeasible scene spec: {0}")]
    InfeasibleSpec(String),

    #[error("path blocked at waypoint {waypoint}: {source}")]
    PathBlocked {
        waypoint: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit status for command-line use: 2 parse, 3 geometric
    /// degeneracy, 4 query inside an obstacle, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::DimensionMismatch { .. } => 2,
            Error::DegenerateInput(_)
            | Error::NotWrapped
            | Error::Unbounded
            | Error::NotInterior { .. } => 3,
            Error::QueryInsideObstacle { .. } => 4,
            Error::PathBlocked { source, .. } => match source.exit_code() {
                4 => 4,
                _ => 1,
            },
            _ => 1,
        }
    }

    pub(crate) fn degenerate(message: impl Into<String>) -> Self {
        Error::DegenerateInput(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
