use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot {action} {path}: {source}")]
    Io {
        action: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{0}")]
    Domain(specprob::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Domain(_) => 3,
        }
    }

    /// Classifies a library error raised while reading `path`: malformed
    /// documents are parse errors, everything else is a domain violation.
    pub fn from_input(path: &std::path::Path, err: specprob::Error) -> Self {
        use specprob::Error as E;
        match err {
            E::Json(source) => CliError::Parse { path: path.to_path_buf(), source },
            E::NotSquare { .. } | E::DimensionMismatch { .. } | E::EmptyDimension => {
                CliError::Usage(format!("malformed operator in {}: {err}", path.display()))
            }
            other => CliError::Domain(other),
        }
    }
}

impl From<specprob::Error> for CliError {
    fn from(err: specprob::Error) -> Self {
        CliError::Domain(err)
    }
}
