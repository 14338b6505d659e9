use thiserror::Error;

/// Errors raised by graph construction and the analyses built on top of it.
///
/// The variants fall into four families that the command-line front end maps
/// onto distinct exit codes: malformed input, refused analyses, structural
/// problems with the input graph, and internal-consistency failures (an
/// identity that must hold on every valid input did not).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GemError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("color {color} out of range for a {n_colors}-colored graph")]
    ColorOutOfRange { color: usize, n_colors: usize },

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graphs have different color counts ({0} vs {1})")]
    MismatchedColors(usize, usize),

    #[error("invalid dipole: {0}")]
    InvalidDipole(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("analysis refused: {0}")]
    Refused(String),

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("budget exhausted after {completed} shards; checkpoint written")]
    BudgetExhausted { completed: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl GemError {
    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            GemError::Refused(_) | GemError::BudgetExhausted { .. } => 1,
            GemError::Parse { .. }
            | GemError::InvalidGraph(_)
            | GemError::ColorOutOfRange { .. }
            | GemError::VertexOutOfRange { .. }
            | GemError::MismatchedColors(..)
            | GemError::Disconnected { .. }
            | GemError::InvalidDipole(_)
            | GemError::Io(_) => 2,
            GemError::Structural(_) | GemError::Consistency(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GemError::Parse { .. } => "parse",
            GemError::InvalidGraph(_) => "invalid-graph",
            GemError::ColorOutOfRange { .. } => "color-out-of-range",
            GemError::VertexOutOfRange { .. } => "vertex-out-of-range",
            GemError::Disconnected { .. } => "disconnected",
            GemError::MismatchedColors(..) => "mismatched-colors",
            GemError::InvalidDipole(_) => "invalid-dipole",
            GemError::Structural(_) => "structural",
            GemError::Refused(_) => "refused",
            GemError::Consistency(_) => "internal-consistency",
            GemError::BudgetExhausted { .. } => "budget-exhausted",
            GemError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for GemError {
    fn from(e: std::io::Error) -> Self {
        GemError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GemError>;
