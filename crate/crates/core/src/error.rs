use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty classification set")]
    EmptySet,

    #[error("empty label space")]
    EmptyLabelSpace,

    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),

    #[error("unknown label '{0}'")]
    UnknownLabel(String),

    #[error("unknown label '{label}' at line {line}")]
    UnknownLabelAt { label: String, line: usize },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("malformed confusion matrix: {0}")]
    MalformedMatrix(String),

    #[error("not a distribution: {0}")]
    NotADistribution(String),

    #[error("informedness undefined for one class")]
    SingleClass,

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("incomparable reports: {0}")]
    IncomparableReports(String),

    #[error("missing metric '{0}'")]
    MissingMetric(String),

    #[error("no reports to average")]
    NoReports,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by how the tool was invoked rather than by the
    /// data being evaluated.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidConfig(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
