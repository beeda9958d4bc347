use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = NwError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NwError {
    #[error("level must be non-zero")]
    ZeroLevel,

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: Rational, right: Rational },

    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),

    #[error("raising set too shallow: max mode {max_mode} < component height {height}")]
    TruncationTooShallow { max_mode: i64, height: usize },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("coefficient system has a {dim}-dimensional solution space, expected 1")]
    DegenerateSystem { dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
