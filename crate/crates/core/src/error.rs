use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid label `{0}`: labels are nonempty identifiers over [A-Za-z0-9_]")]
    InvalidLabel(String),

    #[error("too many points: {0} (at most {max})", max = crate::set::MAX_POINTS)]
    TooManyPoints(usize),

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// A consistency check that cannot fail on valid input did fail.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("{line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
