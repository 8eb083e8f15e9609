use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by the command line to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Analysis,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("document {id:?} is not valid UTF-8: {source}")]
    Decode {
        id: String,
        #[source]
        source: std::string::FromUtf8Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("JSON error in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("CSV error in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("lexicon {0} contains no entries")]
    EmptyLexicon(PathBuf),

    #[error("corpus {0:?} is empty or yields no bigrams")]
    EmptyCorpus(String),

    #[error("stem {0:?} not found")]
    NotFound(String),

    #[error("undefined value: {0}")]
    Undefined(String),

    #[error("degenerate semantic frame for {0:?}: target has no neighbours")]
    DegenerateFrame(String),

    #[error("lexicon has {available} emotional stems, {requested} requested")]
    InsufficientLexicon { requested: usize, available: usize },

    #[error("empty vocabulary: no tokens to model")]
    EmptyVocabulary,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("stage {stage} failed for corpus {corpus:?}: {source}")]
    Stage {
        stage: &'static str,
        corpus: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => ErrorKind::Config,
            Error::Io { .. }
            | Error::Decode { .. }
            | Error::Parse { .. }
            | Error::Json { .. }
            | Error::Csv { .. }
            | Error::EmptyLexicon(_)
            | Error::EmptyCorpus(_) => ErrorKind::Data,
            Error::NotFound(_)
            | Error::Undefined(_)
            | Error::DegenerateFrame(_)
            | Error::InsufficientLexicon { .. }
            | Error::EmptyVocabulary => ErrorKind::Analysis,
            Error::Stage { source, .. } => source.kind(),
        }
    }
}
