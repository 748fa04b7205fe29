use thiserror::Error;

/// Errors raised by the numerical engine and the physics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument {value} outside the domain ({domain})")]
    Domain {
        func: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} did not converge after {iterations} steps (last term {last_term:e}, tolerance {tolerance:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        last_term: f64,
        tolerance: f64,
    },

    #[error("{func} has no `{method}` evaluation path")]
    Unsupported {
        func: &'static str,
        method: &'static str,
    },

    #[error("quadrature tolerance not met: estimate {estimate:e} with error {achieved:e} (requested {requested:e})")]
    ToleranceNotMet {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}
