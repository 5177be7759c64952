use std::path::PathBuf;

/// Errors of the IO, bench and CLI layer.
#[derive(Debug, thiserror::Error)]
pub enum DriftlabError {
    #[error(transparent)]
    Core(#[from] driftlab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error("empty parameter grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, DriftlabError>;

impl DriftlabError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        DriftlabError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for configuration errors, 3 for data errors.
    pub fn exit_code(&self) -> i32 {
        use driftlab_core::Error as E;
        match self {
            DriftlabError::BadConfig(_) | DriftlabError::EmptyGrid | DriftlabError::Json(_) => 2,
            DriftlabError::Core(
                E::InvalidConfig(_)
                | E::MissingParam(_)
                | E::BadParam { .. }
                | E::BadSpec(_)
                | E::KindMismatch,
            ) => 2,
            _ => 3,
        }
    }
}
