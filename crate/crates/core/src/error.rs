use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    /// Some torsion generator of the domain is sent to an element whose
    /// multiple by the generator's order is nonzero.
    #[error(
        "ill-defined homomorphism: generator {generator} of order {order} maps to an element not killed by {order}"
    )]
    IllDefinedMap { generator: usize, order: String },

    #[error("map is not injective")]
    NotInjective,

    #[error("sequence is not exact at node {node}: {reason}")]
    NotExact { node: usize, reason: String },

    #[error("square {square} of the ladder does not commute")]
    NonCommuting { square: usize },

    /// A theorem-level precondition failed (torsion input required, no free
    /// summand allowed, and so on).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code for the command-line front end: 2 for hypothesis
    /// violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hypothesis(_) => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::InvalidGroup(_) => "invalid_group",
            Error::InvalidElement(_) => "invalid_element",
            Error::IllDefinedMap { .. } => "ill_defined_map",
            Error::NotInjective => "not_injective",
            Error::NotExact { .. } => "not_exact",
            Error::NonCommuting { .. } => "non_commuting",
            Error::Hypothesis(_) => "hypothesis",
            Error::Parse { .. } => "parse",
            Error::Validation(_) => "validation",
            Error::Internal(_) => "internal",
        }
    }
}
