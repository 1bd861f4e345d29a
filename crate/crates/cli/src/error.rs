use thiserror::Error;

/// Everything a command can fail with. Each variant maps to a stable code and
/// an exit status: 3 for a statistical or positivity regression, 2 otherwise.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}{line}:{column}: {message}", path.as_deref().map(|p| format!("{p}:")).unwrap_or_default())]
    Parse { code: &'static str, path: Option<String>, line: usize, column: usize, message: String },
    #[error(transparent)]
    Core(#[from] traffic_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{message}")]
    Usage { code: &'static str, message: String },
    #[error("{0}")]
    Regression(String),
}

impl CliError {
    pub fn usage(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { code, message: message.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { code, .. } | CliError::Usage { code, .. } => code,
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "io_error",
            CliError::Regression(_) => "regression",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Regression(_) => 3,
            _ => 2,
        }
    }

    /// One line: `error code=<code>: <message>`.
    pub fn diagnostic(&self) -> String {
        let message = self.to_string().replace(['\n', '\r'], " ");
        format!("error code={}: {message}", self.code())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
