use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] salience_core::Error),
}

impl CliError {
    /// 3 for numerical failures, 2 for everything the user can fix in the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(e) if e.is_solver_failure() => 3,
            _ => 2,
        }
    }
}

impl CliError {
    /// A reader that stopped early, as in `salience calibrate | head`.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Io(e) if e.kind() == std::io::ErrorKind::BrokenPipe)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Io(std::io::Error::other(format!("{other:?}"))),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(kind) => CliError::Io(std::io::Error::new(kind, e)),
            None => CliError::Io(std::io::Error::other(e)),
        }
    }
}
