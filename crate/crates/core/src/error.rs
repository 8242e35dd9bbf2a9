use thiserror::Error;

/// Failure modes shared by every numerical routine in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented precondition (non-positive step, too few samples, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A physical parameter lies outside the domain of the formula (zero linewidth, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation point coincides with a singularity of the field expression.
    #[error("singular geometry: {0}")]
    Singularity(String),
    /// The literal tangent form of the driven potential is too close to one of its poles.
    #[error("pole proximity: {0}")]
    PoleProximity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
