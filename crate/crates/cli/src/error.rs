use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config or input files.
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
    #[error("stage `{stage}` needs {artifact}; run `terrace {needs}` first")]
    Prerequisite { stage: &'static str, needs: &'static str, artifact: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Prerequisite { .. } => 3,
        }
    }

    pub(crate) fn runtime(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        CliError::Runtime(format!("{context}: {err}"))
    }
}
