use thiserror::Error;

use crate::rootsys::Weight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system {0}: {1}")]
    InvalidRootSystem(String, String),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {0} has {1} coordinates, root system has rank {2}")]
    RankMismatch(Weight, usize, usize),
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("expansion failed: residual support at weight {0}")]
    ExpansionFailure(Weight),
    #[error("invalid algebra data: {0}")]
    InvalidData(String),
    #[error("vanishing norm for weight {0}: constant coefficient is zero")]
    VanishingNorm(Weight),
    #[error("cross-check failed: {0}")]
    PathDisagreement(String),
    #[error("differential does not square to zero: {0}")]
    DifferentialNotNilpotent(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::PathDisagreement(_)
                | Error::DifferentialNotNilpotent(_)
                | Error::VanishingNorm(_)
                | Error::ExpansionFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
