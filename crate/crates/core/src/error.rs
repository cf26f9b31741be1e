use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("word {word} has {blocks} MAS blocks; an even count is required")]
    OddBlockCount { word: String, blocks: usize },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("denominator vanishes at delta = {0}")]
    Pole(String),

    #[error("quantum integer [{n}] vanishes at delta = {delta}")]
    Singular { n: usize, delta: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("overlay assertion violated on {word}: pair ({a}, {b}) joins MAS blocks of different parity")]
    CrossParity { word: String, a: usize, b: usize },

    #[error("not a projection: {0}")]
    NotProjection(String),

    #[error("{0}")]
    Config(String),
}
