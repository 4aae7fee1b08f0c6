use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config: {field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}, line {line}: {reason}")]
    Parse { path: PathBuf, line: u64, reason: String },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error(transparent)]
    Core(#[from] seqopt_core::Error),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }

    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> HarnessError {
        HarnessError::Config {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
