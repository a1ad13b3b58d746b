use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by parsing, validation and the bounded searches.
///
/// Positions and ranks in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("duplicate rank {0}")]
    DuplicateRank(usize),
    #[error("rank {value} out of range 1..={max}")]
    RankOutOfRange { value: i64, max: usize },
    #[error("window ({row}, {col}) out of range for a {rows}x{cols} pattern")]
    WindowOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("unbalanced instance: total supply {supply} != total demand {demand}")]
    Unbalanced { supply: u64, demand: u64 },
    #[error("request exceeds bound {bound}: entry {value}")]
    BoundExceeded { bound: u64, value: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}
