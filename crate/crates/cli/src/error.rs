use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or out-of-range user input.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error(transparent)]
    Core(#[from] chshctx_core::Error),
}

impl CliError {
    /// 0 success, 1 failed checks (or a non-converged optimizer), 2 input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed { .. } => 1,
            CliError::Core(chshctx_core::Error::ConvergenceFailure { .. }) => 1,
            _ => 2,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
