use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error("negative power of nilpotent j{index} survives in {value}")]
    NegativeNilpotentPower { index: usize, value: String },
    #[error("bad dimension {0}: expected 3 <= N <= 6")]
    BadDimension(usize),
    #[error("entry ({row},{col}) is not of the form δ + Jv·r: {residual}")]
    NotAffineInJv {
        row: usize,
        col: usize,
        residual: String,
    },
    #[error("signature has no nilpotent parameter")]
    NoNilpotent,
    #[error("inconsistent pairing: {0}")]
    InconsistentPairing(String),
    #[error("underdetermined pairing: {0}")]
    UnderdeterminedPairing(String),
    #[error("word of length {0} exceeds the bound {1}")]
    WordTooLong(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
