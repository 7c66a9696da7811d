use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image sequence {0:?} is not a bijection")]
    NotABijection(Vec<u32>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    CycleNotation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element cap exceeded: group would have more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("presentation search too large: {0}")]
    SearchBudget(String),
    #[error("line {line}: {message}")]
    Catalog { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by the element cap rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::SearchBudget(_))
    }
}
