use idealcore::AlgebraError;

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("missing {0}")]
    Missing(String),

    #[error("{0}")]
    Invalid(String),

    #[error("{0} check(s) failed")]
    ChecksFailed(usize),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl JobError {
    /// Process exit status: 2 for unsupported input classes, 3 when the
    /// chain does not stabilize in the window, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            JobError::Algebra(AlgebraError::NotImplemented { .. }) => 2,
            JobError::Algebra(AlgebraError::Inconclusive { .. }) => 3,
            _ => 1,
        }
    }
}
