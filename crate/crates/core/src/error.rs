use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by corpus ingestion, distribution construction and
/// metric evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    ParseLine { line: usize, reason: String },

    #[error("invalid list format: {0}")]
    BadFormat(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("empty corpus after filtering")]
    EmptyAfterFilter,

    #[error("no words usable for the {stage} strategy at PIN length {pin_length}")]
    EmptySupport { stage: &'static str, pin_length: usize },

    #[error("mapping {name:?} is not total: letter '{letter}' has no digit")]
    PartialMapping { name: String, letter: char },

    #[error("invalid mapping entry: {0}")]
    BadMapping(String),

    #[error("blacklist of {requested} exhausts a support of {available}")]
    BlacklistExhaustsSupport { requested: usize, available: usize },

    #[error("PIN length mismatch: {left} vs {right}")]
    PinLengthMismatch { left: usize, right: usize },

    #[error("mixture weight {0} is outside [0, 1]")]
    BadWeight(f64),

    #[error("guesswork {0} is below 1; log conversion undefined")]
    GuessworkDomain(f64),

    #[error("{what} produced no positive probability mass")]
    NoMass { what: &'static str },

    #[error("invalid scenario: {0}")]
    BadScenario(String),

    #[error("sweep maximum {k_max} must stay below the support size {support}")]
    SweepTooWide { k_max: usize, support: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Attach a file path to a raw I/O error.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
