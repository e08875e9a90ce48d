use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("digit {digit} out of range for n = {n}")]
    InvalidDigit { digit: u32, n: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point cloud of {required} points exceeds the budget of {budget}; set POLYIFS_BUDGET to at least {required}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("this operation requires an exact rational rotation angle (pass phi as p/q)")]
    RequiresExactAngle,

    #[error("angle {0} is not a face angle of the hull")]
    NotAFaceAngle(String),

    #[error("tie tolerance {tolerance} is too large for n = {n}; it must be below 1/(4n) = {max}")]
    TieToleranceTooLarge { tolerance: f64, n: u32, max: f64 },

    #[error("could not parse angle '{0}': expected p/q or a finite float")]
    ParseAngle(String),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("structural invariant violated: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
