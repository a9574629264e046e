use thiserror::Error;

/// Failures surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] multmoments::Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Threads(String),
}

impl CliError {
    /// 2 for bad input, 3 for a refused resource guard, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use multmoments::Error as E;
        match self {
            CliError::Usage(_) | CliError::Lib(E::InvalidArgument(_) | E::Unsupported(_)) => 2,
            CliError::Lib(E::Resource { .. } | E::OutOfRange { .. }) => 3,
            _ => 1,
        }
    }
}
