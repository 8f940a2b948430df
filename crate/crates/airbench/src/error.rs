use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] airbench_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}{}: {message}", path.display(), line.map(|l| format!(":{l}")).unwrap_or_default())]
    Format { path: PathBuf, line: Option<u64>, message: String },
    #[error("missing or ill-shaped predictions for {}: {detail}", ids.join(", "))]
    Coverage { ids: Vec<String>, detail: String },
    #[error("unknown builtin predictor `{0}` (expected oracle, constant or knn:<k>)")]
    UnknownPredictor(String),
    #[error("invalid predictor spec: {0}")]
    Spec(String),
    #[error("could not start `{command}`: {source}")]
    Spawn { command: String, source: std::io::Error },
    #[error("{stage} command failed with {}", code.map(|c| format!("exit code {c}")).unwrap_or_else(|| "a signal".into()))]
    PredictorExit { stage: Stage, code: Option<i32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Training,
    Inference,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Training => "training",
            Stage::Inference => "inference",
        })
    }
}

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PREDICTOR: i32 = 3;
pub const EXIT_REJECTED: i32 = 4;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, line: Option<u64>, message: impl Into<String>) -> Self {
        Error::Format { path: path.into(), line, message: message.into() }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        use airbench_core::Error as C;
        match self {
            Error::Core(C::Coverage(_) | C::Shape(_) | C::Fit(_)) => EXIT_PREDICTOR,
            Error::Core(_) | Error::Format { .. } | Error::Spec(_) | Error::UnknownPredictor(_) => EXIT_VALIDATION,
            Error::Coverage { .. } | Error::Spawn { .. } | Error::PredictorExit { .. } => EXIT_PREDICTOR,
            Error::Io { .. } => EXIT_FAILURE,
        }
    }
}
