use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid sweep: {0}")]
    Spec(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error(transparent)]
    Model(#[from] dkp_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Errors caused by what the user typed or supplied, as opposed to a
    /// solver that could not finish.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            CliError::Config { .. }
                | CliError::Spec(_)
                | CliError::Model(dkp_core::Error::Domain { .. } | dkp_core::Error::Degenerate { .. })
        )
    }
}
