use thiserror::Error;

/// Errors fall into two classes: bad input data (validation, preconditions,
/// size gates) and internal verification failures.  The latter mean an
/// algebraic identity that must hold by construction did not, i.e. a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} has {actual}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("not regular: {0}")]
    NotRegular(String),

    #[error("not an inverse semigroup: {0}")]
    NotInverse(String),

    #[error("not a two-sided ideal: {0}")]
    NotIdeal(String),

    #[error("not an invariant object set: {0}")]
    NotInvariant(String),

    #[error("elements belong to different algebras")]
    ContextMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code the CLI maps this error to: 1 for internal
    /// verification failures, 2 for everything input-related.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
