use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation contains a directed cycle")]
    Cycle,

    #[error("element id {id} out of range for {n} elements")]
    Index { id: usize, n: usize },

    #[error("input too large for exact search: {0}")]
    Size(String),

    #[error("gave up after {tries} repair attempts")]
    GiveUp { tries: usize },

    #[error("empty interval for element {element}: h={h}, b={b}")]
    EmptyInterval { element: usize, h: usize, b: usize },

    #[error("not a First-Fit chain partition: {0}")]
    NonFfPartition(String),

    #[error("First-Fit used {m} chains on a poset of width {w}, above the bound {bound}")]
    BoundViolation { m: usize, w: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
