use thiserror::Error;

/// Failures raised by model construction, quadrature and fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate relaxation distribution: {0}")]
    DegenerateDistribution(String),

    #[error(
        "quadrature did not converge: error estimate {estimate:e} exceeds requested {requested:e} \
         after {panels} panels"
    )]
    QuadratureNotConverged {
        estimate: f64,
        requested: f64,
        panels: usize,
    },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("unphysical relaxation set: {reason}")]
    Physicality {
        reason: String,
        /// Largest reference attenuation (Np/m) reachable while the set stays physical.
        max_attainable_alpha_ref: Option<f64>,
    },

    #[error("unphysical compressibility: {0}")]
    UnphysicalCompressibility(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
