use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word syntax: {0}")]
    WordSyntax(String),
    #[error("word letters must be positive integers, found 0")]
    ZeroLetter,
    #[error("empty pattern is not allowed in a pattern set")]
    EmptyPattern,
    #[error("value {value} appears {count} times; every value must appear exactly twice")]
    NotDoubled { value: u32, count: usize },
    #[error("word is not a nonnesting permutation: {0}")]
    NotNonnesting(String),
    #[error("word is not a permutation of 1..n: {0}")]
    NotPermutation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("formula error: {0}")]
    Formula(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
