use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no pair component")]
    NoPairComponent,
    #[error("switch amplitude undefined: epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("efficiency {0} outside [0, 1]")]
    Efficiency(f64),
    #[error("input is not a unit vector (norm^2 = {0})")]
    NotUnit(f64),
    #[error("increase n_max: {0}")]
    Truncation(&'static str),
    #[error("increase n_max: truncation error estimate {estimate:e} exceeds {tolerance:e}")]
    Leakage { estimate: f64, tolerance: f64 },
    #[error("need >= 2 points for a scaling fit")]
    TooFewPoints,
    #[error("scales must be positive and strictly descending")]
    BadScales,
    #[error("crystal parameters invalid: {0}")]
    Crystal(&'static str),
}
