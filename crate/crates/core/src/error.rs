use thiserror::Error;

/// Errors raised by the numerical kernels and the walk simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite input `{name}` = {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// The requested density is a Dirac generalized function, not a finite value.
    #[error("degenerate distribution: {what} is a Dirac pulse at {location}")]
    DiracLimit { what: &'static str, location: f64 },

    /// The density is infinite at the requested point.
    #[error("{what} is singular at {location}")]
    Singular { what: &'static str, location: f64 },

    #[error("unsupported regime: {0}")]
    Unsupported(&'static str),

    #[error("numerical evaluation did not reach tolerance {requested:e} (achieved {achieved:e}) in {what}")]
    NoConvergence {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },

    #[error("observation time {t_obs} lies beyond the simulated horizon {horizon}")]
    Censored { t_obs: f64, horizon: f64 },

    #[error("empty path")]
    EmptyPath,

    #[error("step count overflow: {0} steps")]
    StepOverflow(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter { name, value, reason }
}
