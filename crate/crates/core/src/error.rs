use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("incomplete measurement: max entrywise residual {residual:e} exceeds {tolerance:e}")]
    IncompleteMeasurement { residual: f64, tolerance: f64 },

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {requested} exceeds the resource cap of {cap}")]
    ResourceCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("enumeration of {size} answer sets exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },
}
