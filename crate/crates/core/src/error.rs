use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{y}` is not in the star of `{x}`")]
    NotInStar { x: String, y: String },
    #[error("syllable {0} is not in the stratum")]
    NotInStratum(String),
    #[error("syllable {0} cannot be added to the stratum")]
    CannotAdd(String),
    #[error("`{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error("malformed input at token {pos} `{token}`: {reason}")]
    Parse {
        pos: usize,
        token: String,
        reason: String,
    },
    #[error("graph: {0}")]
    Graph(String),
    #[error("invalid vertex ranking: {0}")]
    Ranking(String),
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("exponent overflow")]
    Overflow,
    #[error("graph is not preGarside (some vertex has finite order)")]
    NotPreGarside,
    #[error("element is not positive")]
    NotPositive,
    #[error("graph is not finite and complete")]
    NotFiniteComplete,
    #[error("graph is lazy; a vertex enumeration is required")]
    Lazy,
    #[error("{0} is not in V_{1}")]
    NotInLevel(String, u32),
    #[error("syllabic word is not reduced: {0}")]
    NotReduced(String),
    #[error("vertex set is not parabolic: {0}")]
    NotParabolic(String),
    #[error("no move applies at position {0}")]
    NoMove(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(pos: usize, token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        token: token.to_string(),
        reason: reason.into(),
    }
}
