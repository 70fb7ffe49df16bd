use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("invalid witness: {0}")]
    Witness(String),
    #[error("heuristic gave up: {0}")]
    HeuristicFailed(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $kind:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::Error::$kind(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
