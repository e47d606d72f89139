use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid {format} at byte {offset}: {reason}")]
    Format {
        path: PathBuf,
        format: &'static str,
        offset: usize,
        reason: String,
    },
    #[error("{path}: {reason}")]
    Manifest { path: PathBuf, reason: String },
    #[error("subject {id}: {source}")]
    Subject {
        id: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Core(#[from] hypoquant_core::Error),
    #[error("{0}")]
    Data(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn for_subject(id: impl Into<String>) -> impl FnOnce(Error) -> Error {
        let id = id.into();
        move |source| Error::Subject {
            id,
            source: Box::new(source),
        }
    }
}
