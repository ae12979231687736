use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("search budget exceeded in {what}: estimated size {estimate} > budget {budget}")]
    BudgetExceeded { what: String, estimate: u128, budget: u128 },

    #[error("category is not loop-free: cycle through {}", cycle.join(" -> "))]
    NotLoopFree { cycle: Vec<String> },

    #[error("requested degree {requested} exceeds reliable bound {reliable} (truncation {truncation})")]
    DegreeBound {
        requested: usize,
        reliable: usize,
        truncation: usize,
    },

    #[error("input is disconnected: {detail}")]
    Disconnected { detail: String },

    #[error("maps are not parallel: {detail}")]
    NotParallel { detail: String },

    #[error("validation failed:\n{0}")]
    Invalid(ValidationReport),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unknown entity `{name}` ({kind})")]
    UnknownName { kind: &'static str, name: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
