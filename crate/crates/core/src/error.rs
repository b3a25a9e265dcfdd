use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("data error: {0}")]
    Data(String),
    #[error("lexicon {0} has no entries")]
    EmptyLexicon(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("training failed: {0}")]
    Training(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad input data rather than by the caller or by training.
    pub fn is_data(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Data(_) | Error::EmptyLexicon(_) | Error::Json(_)
        )
    }
}
