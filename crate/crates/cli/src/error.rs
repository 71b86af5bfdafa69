use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{0}")]
    Cap(String),

    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Runtime(_) => 1,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Tags a library error with the config field it came from.
    pub(crate) fn field(field: &str) -> impl FnOnce(chaingreedy::Error) -> CliError + '_ {
        move |e| match e {
            cap @ chaingreedy::Error::CapExceeded { .. } => CliError::Cap(cap.to_string()),
            other => CliError::Config(format!("{field}: {other}")),
        }
    }
}

impl From<chaingreedy::Error> for CliError {
    fn from(e: chaingreedy::Error) -> Self {
        match e {
            chaingreedy::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            chaingreedy::Error::Io(_) => CliError::Runtime(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
