use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Quadrature(#[from] oscquad_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 2 for numeric failures, 1 for everything the
    /// caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Quadrature(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}
