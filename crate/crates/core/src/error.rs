use std::fmt;

use thiserror::Error;

/// Errors produced by the optimizer library and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameter values or an unknown identifier.
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An input that admits no meaningful result (e.g. an all-zero weight vector).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The objective produced a non-finite value.
    #[error("evaluation error: {message} (input: {input:?})")]
    Evaluation { message: String, input: Vec<f64> },

    /// An error raised inside an optimizer run, with the loop position it happened at.
    #[error("{position}: {source}")]
    Run {
        position: RunPosition,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Where in an optimizer's main loop an error surfaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunPosition {
    /// `None` during initialization.
    pub iteration: Option<usize>,
    /// New-solution (ant / particle / target) index.
    pub member: Option<usize>,
    /// Decision-variable index.
    pub variable: Option<usize>,
}

impl RunPosition {
    pub fn init() -> Self {
        Self {
            iteration: None,
            member: None,
            variable: None,
        }
    }

    pub fn at(iteration: usize, member: Option<usize>, variable: Option<usize>) -> Self {
        Self {
            iteration: Some(iteration),
            member,
            variable,
        }
    }
}

impl fmt::Display for RunPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.iteration {
            None => write!(f, "during initialization")?,
            Some(it) => write!(f, "at iteration {it}")?,
        }
        if let Some(l) = self.member {
            write!(f, ", member {l}")?;
        }
        if let Some(i) = self.variable {
            write!(f, ", variable {i}")?;
        }
        Ok(())
    }
}

impl Error {
    pub(crate) fn at(self, position: RunPosition) -> Self {
        Error::Run {
            position,
            source: Box::new(self),
        }
    }

    /// Strips any [`Error::Run`] wrapping and returns the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Run { source, .. } => source.root(),
            other => other,
        }
    }
}
