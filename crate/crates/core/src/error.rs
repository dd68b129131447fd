use thiserror::Error;

/// Errors produced by the rotating-oscillator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A response denominator vanished on a driven channel: a lossless
    /// oscillator (γ = τ = 0) exactly on the resonance locus, or a static
    /// rotating-frame drive (ω± = 0) at Ω² = ω₀² with τ > 0.
    #[error("response diverges at omega = {omega}, rotation = {rotation}")]
    SingularResonance { omega: f64, rotation: f64 },

    #[error(
        "target rotation {target} unreachable: torque at start is {torque} (must be positive)"
    )]
    UnreachableTarget { target: f64, torque: f64 },

    #[error("spin-up stopped before reaching the target ({reason})")]
    TargetNotReached { reason: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("every ensemble member is singular at this drive")]
    EmptyEnsemble,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
