use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be strictly positive and finite (got {value})")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("rearing cost split does not add up: beta = {beta}, beta_w + beta_m = {split}")]
    CostMismatch { beta: f64, split: f64 },

    #[error("utility undefined: {0}")]
    DomainError(String),

    #[error("benchmark requires alpha > delta (alpha = {alpha}, delta = {delta})")]
    PreferenceOrderViolated { alpha: f64, delta: f64 },

    #[error("transfer must be strictly positive (got {0})")]
    NonPositiveTransfer(f64),

    #[error("no sign change of fertility on [{lo}, {hi}]")]
    BracketingFailure { lo: f64, hi: f64 },

    #[error("fertility is at the zero boundary; derivatives are one-sided only")]
    BoundaryStatics,

    #[error("finite-difference step {step} too large for parameter value {value}")]
    InvalidStep { step: f64, value: f64 },

    #[error("parameter `{0}` is not supported here")]
    UnsupportedParameter(&'static str),

    #[error("objective is not finite at x = {x}")]
    NonFiniteObjective { x: f64 },

    #[error("invalid search interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("subsidy is only modeled for the game; got model `{0}`")]
    SubsidyUnsupported(&'static str),

    #[error("household {index}: {source}")]
    Household {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("{0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 2 for bad input, 3 for solver failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BracketingFailure { .. }
            | Error::NonFiniteObjective { .. }
            | Error::BoundaryStatics => 3,
            Error::Household { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
