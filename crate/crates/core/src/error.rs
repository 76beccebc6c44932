use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("root {root} is not a vertex of a graph with {n} vertices")]
    RootOutOfRange { root: usize, n: usize },

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),

    #[error("no simple graph after {attempts} pairing attempts")]
    ResampleLimitExceeded { attempts: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("invalid census: {0}")]
    InvalidCensus(String),

    #[error("graph is not vertex-transitive")]
    NotTransitive,

    #[error("vertex-transitivity undecided within budget; pass an explicit transitivity assertion")]
    TransitivityUnknown,

    #[error("graph is not regular")]
    NotRegular,

    #[error("degree {degree} is too small for a non-backtracking walk (need at least 3)")]
    DegreeTooSmall { degree: usize },

    #[error("k = {k} outside 0..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("envelope is vacuous at n = {n}, eps = {eps}")]
    DegenerateEnvelope { n: usize, eps: f64 },

    #[error("no samples")]
    EmptyStats,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EndpointOutOfRange { .. } => "EndpointOutOfRange",
            Error::SelfLoop { .. } => "SelfLoop",
            Error::RootOutOfRange { .. } => "RootOutOfRange",
            Error::InfeasibleParameters(_) => "InfeasibleParameters",
            Error::ResampleLimitExceeded { .. } => "ResampleLimitExceeded",
            Error::Parse { .. } => "ParseError",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidCensus(_) => "InvalidCensus",
            Error::NotTransitive => "NotTransitive",
            Error::TransitivityUnknown => "TransitivityUnknown",
            Error::NotRegular => "NotRegular",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::KOutOfRange { .. } => "KOutOfRange",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::DegenerateEnvelope { .. } => "DegenerateEnvelope",
            Error::EmptyStats => "EmptyStats",
            Error::Config(_) => "ConfigError",
            Error::Io(_) => "IoError",
            Error::Csv(_) => "CsvError",
            Error::Json(_) => "JsonError",
        }
    }
}
