use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] affine_dirac::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for rejected input, 1 when a computation could not be completed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(affine_dirac::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}
