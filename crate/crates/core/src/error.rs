use thiserror::Error;

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring context mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid modulus {0}: {1}")]
    InvalidModulus(u64, &'static str),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("too many variables ({0}); at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),

    #[error("not homogeneous: {0}")]
    NonHomogeneous(String),

    /// An input outside the supported classes (radicals, squarefree parts).
    #[error("not implemented for input class `{class}` ({})", trace.join("; "))]
    NotImplemented { class: String, trace: Vec<String> },

    #[error("not a reduction: {0}")]
    NotAReduction(String),

    #[error("V_n chain not stationary within n_max={n_max}: {detail}")]
    Inconclusive { n_max: usize, detail: String },

    #[error("algebra has dimension 0; minimal reductions are generated by no elements")]
    ZeroDimensional,

    #[error("ring is not Cohen-Macaulay: {certificate}; candidate ({}) is not the core", candidate.join(", "))]
    NotCohenMacaulay {
        candidate: Vec<String>,
        certificate: String,
    },

    #[error("denominator not invertible modulo {0}")]
    BadDenominator(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl AlgebraError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        AlgebraError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
