use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("region is unbounded")]
    Unbounded,

    #[error("infeasible workspace: {0}")]
    InfeasibleWorkspace(String),

    #[error("point ({x}, {y}) is not in free space")]
    PointNotInFreeSpace { x: f64, y: f64 },

    #[error("no channel connects the start and goal cells")]
    NoChannel,

    #[error("safety margin {epsilon} too large for cell {cell}: {reason}")]
    MarginTooLarge { cell: usize, epsilon: f64, reason: String },

    #[error("{which} point lies inside the safety margin of cell {cell}")]
    EndpointInsideMargin { which: &'static str, cell: usize },

    #[error("infeasible corridor: {0}")]
    InfeasibleCorridor(String),

    #[error("QP solver failed: {0}")]
    SolverFailure(String),

    #[error("curve has a cusp (vanishing speed) at t = {t}")]
    Cusp { t: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by the geometry being too tight for the
    /// requested margin or otherwise unplannable (as opposed to bad input).
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            Error::MarginTooLarge { .. }
                | Error::EndpointInsideMargin { .. }
                | Error::InfeasibleCorridor(_)
                | Error::NoChannel
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGeometry(_) => "invalid-geometry",
            Error::Unbounded => "unbounded",
            Error::InfeasibleWorkspace(_) => "infeasible-workspace",
            Error::PointNotInFreeSpace { .. } => "point-not-in-free-space",
            Error::NoChannel => "no-channel",
            Error::MarginTooLarge { .. } => "margin-too-large",
            Error::EndpointInsideMargin { .. } => "endpoint-inside-margin",
            Error::InfeasibleCorridor(_) => "infeasible-corridor",
            Error::SolverFailure(_) => "solver-failure",
            Error::Cusp { .. } => "cusp",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse(_) => "parse",
            Error::Validation(_) => "validation",
            Error::Io(_) => "io",
        }
    }

    /// Cell the error refers to, if any.
    pub fn cell(&self) -> Option<usize> {
        match self {
            Error::MarginTooLarge { cell, .. } | Error::EndpointInsideMargin { cell, .. } => Some(*cell),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
