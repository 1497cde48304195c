use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at token {token:?}: {reason}")]
    Parse { token: String, reason: String },
    #[error("arity mismatch: expected {expected} {what}, got {got}")]
    Arity {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("empty word not allowed here")]
    EmptyWord,
    #[error("graph is a tree, core undefined")]
    TreeGraph,
    #[error("graph has no basepoint")]
    NoBasepoint,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("variable x{0} has trivial target value")]
    TrivialTarget(usize),
    #[error("the ideal is trivial")]
    TrivialIdeal,
    #[error("exponents {0} and {1} are not coprime")]
    NotCoprime(u32, u32),
    #[error("invalid couple: {0}")]
    InvalidCouple(String),
    #[error("invalid insertion word: {0}")]
    InvalidInsertion(InsertionViolation),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

/// Which condition of an insertion word failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InsertionViolation {
    #[error("couple does not lie in the core of H")]
    CoupleOutsideCore,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word does not start with the label of the couple's first edge")]
    WrongFirstLetter,
    #[error("word is not a loop in the core of H at the left vertex")]
    NotLoopAtLeft,
    #[error("word is not a loop in the core of H at the right vertex")]
    NotLoopAtRight,
}

pub type Result<T> = std::result::Result<T, Error>;
