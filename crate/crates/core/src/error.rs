use thiserror::Error;

/// Errors raised by the evaluators, solvers and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A time outside `[0, horizon)` of the strain model.
    #[error("horizon error: time t = {t} is outside the strain model's validity window [0, {horizon})")]
    Horizon { t: f64, horizon: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The requested tolerance could not be reached; `achieved` is the best estimate.
    #[error("accuracy target {target:e} not reached in {context} (achieved {achieved:e})")]
    Accuracy {
        context: &'static str,
        target: f64,
        achieved: f64,
    },

    /// Non-finite values appeared while time stepping.
    #[error("solution became non-finite at step {step} (t = {time})")]
    Instability { step: usize, time: f64 },

    #[error("{context} overflows double precision")]
    Overflow { context: &'static str },

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
