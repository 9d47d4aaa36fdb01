use thiserror::Error;

/// Errors raised by the permanent, majorization and estimator operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("photon numbers differ: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("distribution has no photons")]
    EmptyDistribution,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("partitions {0} and {1} are not comparable under majorization")]
    IncomparableInput(String, String),

    #[error("pair ({0}, {1}) is not ordered so that the first is majorized by the second")]
    NotComparablePair(String, String),

    #[error("supports differ in length: {0} vs {1}")]
    SupportMismatch(usize, usize),

    #[error("algorithm {0} does not accept these distributions")]
    UnsupportedAlgo(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("runtime table claims {claim} but direct evaluation gives {left} vs {right}")]
    TableContradiction {
        claim: &'static str,
        left: String,
        right: String,
    },
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::WeightMismatch { .. } => "WeightMismatch",
            Error::EmptyDistribution => "EmptyDistribution",
            Error::SizeLimit(_) => "SizeLimit",
            Error::IncomparableInput(..) => "IncomparableInput",
            Error::NotComparablePair(..) => "NotComparablePair",
            Error::SupportMismatch(..) => "SupportMismatch",
            Error::UnsupportedAlgo(_) => "UnsupportedAlgo",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::TableContradiction { .. } => "TableContradiction",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
