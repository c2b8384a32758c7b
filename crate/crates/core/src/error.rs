use alloc::string::String;

/// Errors reported by the computational routines of this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid lattice profile: {0}")]
    InvalidProfile(String),

    #[error("invalid layer schedule: {0}")]
    InvalidSchedule(String),

    #[error("edge index {index} out of range (layer has {len} edges)")]
    EdgeOutOfRange { index: usize, len: usize },

    #[error("instance too large: {what} needs {size}, limit is {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },

    #[error("objective is unbounded below (target outside the Newton polytope)")]
    UnboundedBelow,

    #[error("no convergence after {iterations} iterations (best value {best_value})")]
    NotConverged { iterations: usize, best_value: f64 },

    #[error("no feasible point found after {starts} starts")]
    NoFeasiblePoint { starts: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! invalid {
    ($variant:ident, $($arg:tt)*) => {
        $crate::Error::$variant(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
