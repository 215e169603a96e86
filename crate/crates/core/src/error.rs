use thiserror::Error;

/// Errors raised by geometric constructions, operator algebra and suites.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain where the construction is defined
    /// (massless rest frame, chart pole, zero momentum, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    /// A coefficient field was differentiated beyond the jet order it carries.
    #[error("coefficient field carries derivatives up to order {have}, {need} required")]
    InsufficientOrder { have: u8, need: u8 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Discretization too coarse for the requested quantity.
    #[error("refine the discretization: {0}")]
    Refine(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// Invalid configuration or command usage.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
