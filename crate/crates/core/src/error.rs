use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("timelike gamma undefined: |u| = {speed} is not below c = {c}")]
    TimelikeGammaUndefined { speed: f64, c: f64 },

    #[error("sigma speed singular at rest (velocity component {axis} is zero)")]
    SigmaSpeedSingular { axis: usize },

    #[error("speed exceeds c: |u| = {speed}, c = {c}")]
    SpeedExceedsC { speed: f64, c: f64 },

    #[error("non-timesheet configuration: radicand = {radicand}")]
    NonTimesheet { radicand: f64 },

    #[error("leapfrog unstable: h_tau = {h_tau} exceeds h_phi = {h_phi}")]
    Unstable { h_tau: f64, h_phi: f64 },

    #[error("non-finite value produced at step {step}")]
    NonFinite { step: usize },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
