use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched cyclotomic orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("mismatched root-of-unity parameter: p = {0} vs p = {1}")]
    PMismatch(u32, u32),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("eigenvalue outside the coefficient field: factor {0}")]
    EigenvalueOutsideField(String),
    #[error("extension classes are not composable: {0}")]
    NotComposable(String),
    #[error("module admits no consistent k-action: {0}")]
    NoKAction(String),
    /// Something the classification of indecomposables rules out happened; this
    /// always indicates a bug.
    #[error("classification failure: {0}")]
    Classification(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
