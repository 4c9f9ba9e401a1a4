use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{birth}, {death}]: birth must be finite and not exceed death")]
    InvalidInterval { birth: f64, death: f64 },

    #[error("barcode contains infinite intervals; project it with tau or phi first")]
    InfiniteInterval,

    #[error("barcode is empty")]
    EmptyBarcode,

    #[error("barcode has zero total length")]
    ZeroLength,

    #[error("barcode has an interval not born at the origin")]
    NotAtOrigin,

    #[error("Wasserstein exponent must be >= 1 or infinite, got {0}")]
    InvalidExponent(f64),

    #[error("barcodes have different numbers of infinite intervals, distance is infinite")]
    InfiniteDistance,

    #[error("truncation constant {constant} is below the largest finite coordinate {required}")]
    TruncationConstant { constant: f64, required: f64 },

    #[error("summary function has zero L1 norm")]
    ZeroNorm,

    /// A numeric argument is outside the domain where a formula is defined.
    #[error("{0}")]
    OutOfDomain(String),

    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("invalid filtered complex: {0}")]
    InvalidComplex(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a numeric precondition of a formula (as
    /// opposed to malformed input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::InfiniteInterval
                | Error::ZeroLength
                | Error::NotAtOrigin
                | Error::InfiniteDistance
                | Error::TruncationConstant { .. }
                | Error::ZeroNorm
                | Error::OutOfDomain(_)
        )
    }
}
