use thiserror::Error;

/// Errors raised by the solvers and constructors in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid equation: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("degenerate spectrum: lambda_{j} and lambda_{k} are not strictly increasing")]
    DegenerateSpectrum { j: usize, k: usize },

    #[error("Newton iteration did not converge (residual {residual_norm:e})")]
    MaxIterExceeded {
        last: Vec<f64>,
        residual_norm: f64,
    },

    #[error("singular Jacobian")]
    SingularJacobian,

    #[error("point on the boundary of (-1, 1) or coincident points")]
    PointOnBoundary,

    #[error("insufficient decay: fit window holds {found} snapshots, need at least {needed}")]
    InsufficientDecay { found: usize, needed: usize },

    #[error("trajectory did not converge")]
    NotConverged,

    #[error("exponent lambda*t = {0} exceeds the overflow cap")]
    Overflow(f64),

    #[error("found {found} real roots, expected {expected}")]
    RootCountMismatch { found: usize, expected: usize },

    #[error("root {0} lies outside the domain")]
    RootOutsideDomain(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
