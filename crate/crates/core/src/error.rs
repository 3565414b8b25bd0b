use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The beta density diverges at this boundary point (shape < 1).
    #[error("infinite density at boundary theta = {theta}")]
    InfiniteDensity { theta: f64 },

    #[error("structure mismatch: missing ids {missing:?}, unexpected ids {extra:?}")]
    StructureMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("malformed structure: {0}")]
    MalformedStructure(String),

    #[error("duplicate component id `{0}`")]
    DuplicateComponent(String),

    #[error("`{0}` node has no children")]
    EmptyChildren(&'static str),

    #[error("all-success shortcut requires a pure series system; found a parallel node")]
    ParallelInShortcut,

    /// Rejection sampler ran out of candidate budget.
    #[error(
        "attempt budget exhausted: accepted {accepted} of {requested} after {attempts} attempts \
         (predictive mass estimate {predictive_mass:.3e})"
    )]
    AttemptsExhausted {
        requested: usize,
        accepted: usize,
        attempts: u64,
        predictive_mass: f64,
    },

    #[error("empty sample")]
    EmptySample,

    #[error("unknown label {0}")]
    UnknownLabel(i64),

    #[error("column z = {0} has zero probability mass")]
    ZeroColumnMass(i64),

    #[error("model file: {0}")]
    Model(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
