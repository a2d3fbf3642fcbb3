use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index {index} exceeds arity {arity}")]
    Arity { index: usize, arity: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("zero germ")]
    ZeroGerm,
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("no facets: Γ^(n-1)(f) is empty")]
    NoFacets,
    #[error("face does not belong to the Newton boundary of this germ")]
    FaceNotOfThisGerm,
    #[error("not a singularity: {0}")]
    NotSingularity(String),
    #[error("Newton diagram is not convenient")]
    NotConvenient,
    #[error("germ is not quasihomogeneous")]
    NotQuasihomogeneous,
    #[error("not an isolated singularity: {0}")]
    NotIsolated(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("constructive search exhausted: {0}")]
    SearchExhausted(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Errors caused by the input rather than by an internal inconsistency.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
