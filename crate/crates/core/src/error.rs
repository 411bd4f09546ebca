use thiserror::Error;

/// Errors raised by the algebra, geometry and projection routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("the set is empty")]
    EmptySet,

    #[error("negative power {power} of the zero element")]
    ZeroToNegativePower { power: i64 },

    #[error("negative power {power} of a balanced element has no value")]
    BalancedNegativePower { power: i64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("signed literal `{literal}` at byte {pos} is not allowed in mpa mode")]
    ModeViolation { pos: usize, literal: String },

    #[error("coordinate {coord} does not lie on either ray of the chart")]
    OffChart { coord: usize },

    #[error("max-combine metrics do not factor over products; use the grid projection instead")]
    MaxCombineNotFactorizable,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infimum {infimum} is not attained in the set")]
    NotAttained { infimum: f64 },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("grid is empty inside the truncation bound {max_magnitude}")]
    EmptyGrid { max_magnitude: f64 },
}

impl Error {
    /// Short machine-readable tag, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptySet => "empty_set",
            Error::ZeroToNegativePower { .. } | Error::BalancedNegativePower { .. } => "power",
            Error::Parse { .. } => "parse",
            Error::ModeViolation { .. } => "mode_violation",
            Error::OffChart { .. } => "off_chart",
            Error::MaxCombineNotFactorizable => "max_combine",
            Error::Precondition(_) => "precondition",
            Error::NotAttained { .. } => "not_attained",
            Error::InvalidValue(_) => "invalid_value",
            Error::EmptyGrid { .. } => "empty_grid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
