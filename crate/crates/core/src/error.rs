use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry ({i},{j}) is not symmetric with ({j},{i})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("matrix must have at least one row")]
    EmptyMatrix,

    #[error("jacobi eigensolver did not converge within {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("dimension {n} exceeds the cap {cap} for full measure construction; use moment-level operations instead")]
    MeasureDimensionCap { n: usize, cap: usize },

    #[error("hike length {requested} exceeds the enumeration cap {cap}")]
    HikeLengthCap { requested: usize, cap: usize },

    #[error("{context} matrix is singular, inversion failed")]
    Singular { context: &'static str },

    #[error(
        "operation requires a simple spectrum, but some eigenvalues are repeated within tolerance"
    )]
    RepeatedEigenvalues,

    #[error("invalid vertex subset: {reason}")]
    InvalidSubset { reason: String },

    #[error("truncation tail too large; reduce every |z_i| below {max_abs_z:.6}")]
    TruncationTail { max_abs_z: f64 },

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn subset(reason: impl Into<String>) -> Self {
        Error::InvalidSubset {
            reason: reason.into(),
        }
    }

    pub(crate) fn argument(reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            reason: reason.into(),
        }
    }
}
