use thiserror::Error;

/// Errors raised by the simulation engine and the scenario layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Inconsistent physical set-up: mismatched field kinds, invalid media, bad geometry.
    #[error("configuration error: {0}")]
    Config(String),
    /// Input outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A lead does not carry a propagating wave at the evaluated drive.
    #[error("evanescent lead: {lead} lead is not propagating at drive {drive:e} (k = {k})")]
    EvanescentLead {
        lead: &'static str,
        drive: f64,
        k: String,
    },
    /// A grid scan failed at one point.
    #[error("scan aborted at grid index {index}: {source}")]
    ScanPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    /// Phase samples too coarse to unwrap unambiguously.
    #[error("phase grid too coarse between indices {index} and {next}: refine the grid", next = .index + 1)]
    CoarseGrid { index: usize },
    /// Pulse and spectrum do not fit together.
    #[error("band error: {0}")]
    Band(String),
    /// Scenario document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A dimensional quantity in a scenario document is malformed.
    #[error("unit error in field `{field}`: {message}")]
    Unit { field: String, message: String },
    /// Error raised while running a named scenario.
    #[error("scenario `{name}`: {source}")]
    Scenario {
        name: String,
        #[source]
        source: Box<Error>,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by invalid user input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Config(_) | Error::Parse(_) | Error::Unit { .. } => true,
            Error::Scenario { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
