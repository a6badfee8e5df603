use std::fmt;

use thiserror::Error;

pub type Result<T, E = CarpetError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CarpetError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("level {level} exceeds the resource cap of {cap} (set CARPET_MAX_LEVEL to raise it)")]
    ResourceLimit { level: u32, cap: u32 },

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("vertex {0} is not reachable from the target set")]
    Unreachable(String),

    /// The search for a separating radius ran out of budget. Reaching this
    /// means the distance invariants differ but no small ball exhibits it.
    #[error("no separating radius up to {max_radius} for {left} and {right}")]
    WitnessNotFound {
        left: String,
        right: String,
        max_radius: u32,
    },
}

/// A word syntax error, rendered with a caret under the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub input: String,
    /// Character offset into `input`.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.message)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.position))
    }
}
