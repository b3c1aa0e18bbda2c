use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(#[from] clap::Error),
    #[error("config error: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: extremal::Error,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 config, 3 numeric or domain, 4 integrity, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Usage(e) => {
                if e.use_stderr() {
                    2
                } else {
                    0
                }
            }
            CliError::Compute { source, .. } => match source {
                extremal::Error::Integrity(_) | extremal::Error::Format { .. } => 4,
                _ => 3,
            },
            CliError::Io(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

/// Attaches subcommand context to library errors.
pub trait Context<T> {
    fn context(self, what: &str) -> Result<T, CliError>;
}

impl<T> Context<T> for extremal::Result<T> {
    fn context(self, what: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Compute { context: what.to_string(), source })
    }
}
