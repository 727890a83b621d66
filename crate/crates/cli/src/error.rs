use mlq_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("verification failed: {0}")]
    Verification(String),
    /// The reader of stdout went away; not reported.
    #[error("output closed")]
    Closed,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 2 for input and schema errors, 3 for model errors, 4 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Model(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Closed => 0,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Reducible
            | CoreError::Absorbing(_)
            | CoreError::EmptyChain
            | CoreError::InvalidChain(_)
            | CoreError::Invariant(_) => CliError::Model(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("json: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Input(format!("io: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
