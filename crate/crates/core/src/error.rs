use thiserror::Error;

/// Failure modes shared by the special functions, the model and the
/// scattering sums.
///
/// Numeric payloads are carried as `f64` whatever the scalar type of the
/// computation, so the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} missed its tolerance: best estimate {best_estimate:e} with error {error_estimate:e}")]
    Accuracy {
        what: &'static str,
        best_estimate: f64,
        error_estimate: f64,
    },

    #[error("amplitude diverges at chi = {chi} (forward direction)")]
    Divergence { chi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(name: &'static str, value: f64, reason: &'static str) -> Result<T> {
    Err(Error::Domain { name, value, reason })
}
