use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parity pattern violated at entry ({row}, {col})")]
    ParityPatternViolation { row: usize, col: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid block profile: {0}")]
    InvalidProfile(String),

    #[error("not in the big cell: {0}")]
    NotInBigCell(String),

    #[error("rank deficient span: {0}")]
    RankDeficient(String),

    #[error("not a point: relation {0} does not vanish")]
    NotAPoint(String),

    #[error("unknown property suite `{0}`")]
    UnknownSuite(String),

    #[error("malformed document: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable name of the error variant, used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch => "RingMismatch",
            Error::NotInvertible(_) => "NotInvertible",
            Error::ParityViolation(_) => "ParityViolation",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::InvalidRing(_) => "InvalidRing",
            Error::ParityPatternViolation { .. } => "ParityPatternViolation",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::InvalidProfile(_) => "InvalidProfile",
            Error::NotInBigCell(_) => "NotInBigCell",
            Error::RankDeficient(_) => "RankDeficient",
            Error::NotAPoint(_) => "NotAPoint",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::Malformed(_) => "Malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
