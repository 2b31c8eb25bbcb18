use thiserror::Error;

/// Errors raised by the engines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("({s}, {t}) is not a primitive pair")]
    NotCoprime { s: i64, t: i64 },

    #[error("fibre ({s}, {t}) is singular")]
    SingularFibre { s: i64, t: i64 },

    #[error("fibre ({s}, {t}) is anisotropic over Q")]
    Anisotropic { s: i64, t: i64 },

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("density at p = {p} did not stabilize (partial sequence {partial:?})")]
    NotStabilized { p: u64, partial: Vec<String> },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("function {0} does not satisfy f(p) = 1 + delta*chi_3(p) + O(1/p)")]
    NotInClassG(String),

    #[error("degenerate design matrix: {0}")]
    DegenerateDesign(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
