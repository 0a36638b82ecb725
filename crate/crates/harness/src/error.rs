//! Harness-level errors, mapped onto CLI exit codes.

/// Exit codes: 0 pass, 1 expectation mismatch, 2 configuration error,
/// 3 runtime/numeric error.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config parse error: {0}")]
    Parse(String),

    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("unknown problem `{0}`: not a readable file and not a registry name")]
    UnknownProblem(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("runtime error in problem `{name}`: {source}")]
    Runtime {
        name: String,
        #[source]
        source: orbitsum_core::Error,
    },
}

impl HarnessError {
    /// The CLI exit code this error maps onto.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse(_) | HarnessError::Config { .. } | HarnessError::UnknownProblem(_) => 2,
            HarnessError::Io { .. } | HarnessError::Runtime { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
