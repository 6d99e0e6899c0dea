use thiserror::Error;

/// Errors raised by the epikit library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type: {0}")]
    InvalidType(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("roots are linearly dependent: {0}")]
    LinearlyDependent(String),

    #[error("inadmissible exponent pair ({i}, {j})")]
    InadmissiblePair { i: u32, j: u32 },

    #[error("invalid Kac coordinates: {0}")]
    InvalidKac(String),

    #[error("point is not the barycentre of a facet of the closed alcove")]
    NotBarycentre,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("family is unstable: profile {0} is not cone-trivially supported")]
    Unstable(usize),

    #[error("empty profile family")]
    EmptyFamily,

    #[error("candidate set is infinite: support gradients do not positively span")]
    NonCompact,

    #[error("group too large to enumerate ({0} elements)")]
    TooLarge(u128),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case tag for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidType(_) => "invalid_type",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::NotARoot(_) => "not_a_root",
            Error::LinearlyDependent(_) => "linearly_dependent",
            Error::InadmissiblePair { .. } => "inadmissible_pair",
            Error::InvalidKac(_) => "invalid_kac",
            Error::NotBarycentre => "not_barycentre",
            Error::Precondition(_) => "precondition",
            Error::Unsupported(_) => "unsupported",
            Error::Unstable(_) => "unstable",
            Error::EmptyFamily => "empty_family",
            Error::NonCompact => "non_compact",
            Error::TooLarge(_) => "too_large",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
