use thiserror::Error;

/// Errors produced by point-set construction, parsing and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VolselError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point dimension must be at least 1")]
    ZeroDimension,

    #[error("coordinate {axis} of point {point} is not strictly positive and finite")]
    InvalidCoordinate { point: usize, axis: usize },

    #[error(
        "exact-mode coordinates are too large: the volume bound overflows 128-bit accumulation"
    )]
    ExactOverflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("inclusion-exclusion limited to {limit} points, got {size}")]
    SizeLimit { size: usize, limit: usize },

    #[error("enumeration needs {required} subsets, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("cell with {size} points exceeds the exhaustive-solve cap of {cap}")]
    CellCapExceeded { size: usize, cap: usize },

    #[error("k = {k} out of range for {n} points")]
    KOutOfRange { k: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl VolselError {
    /// True for errors caused by a solver hitting a configured work limit.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            VolselError::SizeLimit { .. }
                | VolselError::BudgetExceeded { .. }
                | VolselError::CellCapExceeded { .. }
        )
    }
}

pub type Result<T, E = VolselError> = std::result::Result<T, E>;
