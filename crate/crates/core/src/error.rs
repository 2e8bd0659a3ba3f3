use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The dipole-dipole potential diverges at contact. `leading` is the
    /// dominant term −3/(2R³) evaluated at the offending argument
    /// (−∞ at R = 0).
    #[error("singular potential at R = {r}: leading term {leading}")]
    Singularity { r: f64, leading: f64 },

    #[error("no root in bracket: {0}")]
    Range(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("internal consistency violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
