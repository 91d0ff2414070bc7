use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid is not square (or is empty)")]
    NotSquare,
    #[error("symbol out of range at row {row}, column {col}")]
    SymbolOutOfRange { row: usize, col: usize },
    #[error("symbol {symbol} repeated in row {row}")]
    RepeatInRow { row: usize, symbol: usize },
    #[error("symbol {symbol} repeated in column {col}")]
    RepeatInColumn { col: usize, symbol: usize },
    #[error("dimension mismatch: expected order {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow")]
    IntegerOverflow,
    #[error("k must be nonzero")]
    ZeroK,
    #[error("order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("group element {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("multiplier {i} must satisfy 0 < i < {order}")]
    IOutOfRange { i: i64, order: usize },
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: i64, n: usize },
    #[error("weight is not a partial {k}-weight")]
    NotAPartialWeight { k: i64 },
    #[error("weight is not a near 1-weight")]
    NotANearOneWeight,
    #[error("cell ({row}, {col}, {symbol}) is not a triple of the square")]
    InvalidAnchor { row: usize, col: usize, symbol: usize },
    #[error("order {0} is even; the 1-weight construction needs odd order")]
    EvenOrder(usize),
    #[error("block size {q} does not divide order {order}")]
    QDoesNotDivideOrder { q: usize, order: usize },
    #[error("block structure is inconsistent with the square")]
    InconsistentBlockStructure,
    #[error("invalid group specification: {0}")]
    InvalidGroupSpec(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
