use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("{path}: eta is not symmetric at ({i}, {j})")]
    NonSymmetricEta { path: String, i: usize, j: usize },

    #[error("{path}: eta is singular")]
    SingularEta { path: String },

    #[error(transparent)]
    Core(#[from] pencil_core::Error),
}

impl CliError {
    /// Stable machine-readable code; core errors keep their own codes.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "E_IO",
            CliError::Json(_) => "E_JSON",
            CliError::Schema { .. } => "E_SCHEMA",
            CliError::NonSymmetricEta { .. } => "E_NON_SYMMETRIC_ETA",
            CliError::SingularEta { .. } => "E_SINGULAR_ETA",
            CliError::Core(e) => e.code(),
        }
    }
}
