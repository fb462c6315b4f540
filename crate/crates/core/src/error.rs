use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid rank {rank} for type {family}: {constraint}")]
    InvalidRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not a root")]
    NotARoot(String),

    #[error(
        "{what} exceeded the safety cap of {cap} elements; \
         lower the degree, pick a smaller type, or raise the cap"
    )]
    CapExceeded { what: &'static str, cap: usize },

    #[error("polynomial variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("expected a nonzero homogeneous linear form")]
    NotLinear,

    #[error("classes belong to different GKM graphs")]
    GraphMismatch,

    #[error("the Euler class needs the graph of G/P_Xi")]
    NotXiGraph,

    #[error("multiplication by the Euler class is not injective into degree {degree}")]
    InjectivityFailure { degree: usize },

    #[error("dimension inconsistency: {0}")]
    Dimension(String),

    #[error("polytope certification failed: {0}")]
    Certification(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug or a broken mathematical
    /// assumption rather than bad input or resource limits.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_)
                | Error::InjectivityFailure { .. }
                | Error::Dimension(_)
                | Error::Certification(_)
        )
    }
}
