use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rows span the whole space; no orthogonal direction exists")]
    DegenerateProjector,

    #[error("matrix is singular")]
    Singular,

    #[error("CSIT violation: receiver {receiver} slot {slot} requested at slot {now}")]
    CsitViolation {
        receiver: usize,
        slot: usize,
        now: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("CSIT configuration mismatch: scheme needs {expected}, got {actual}")]
    ConfigMismatch { expected: String, actual: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("zero-forcer infeasible at receiver {receiver}")]
    Infeasible { receiver: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
