use crate::quadrature::LineIntegral;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A detuning denominator fell below the resonance guard.
    #[error("medium resonance: detuning denominator {denominator:e} at E = {energy}")]
    MediumResonance { energy: f64, denominator: f64 },

    #[error("outside the dilute regime: {0}")]
    RegimeViolation(String),

    #[error(
        "pole iteration did not converge after {iterations} steps (last change {last_change:e})"
    )]
    ConvergenceFailure { iterations: usize, last_change: f64 },

    #[error("quadrature failed: {reason}")]
    QuadratureFailure {
        reason: String,
        partial: Option<Box<LineIntegral>>,
    },

    #[error("pole evaluation supports powers 0..=3, got {0}")]
    UnsupportedPower(u32),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
