use thiserror::Error;

use crate::partition::Node;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("a multipartition needs at least one component")]
    NoComponents,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("component count mismatch: {left} vs {right}")]
    ComponentMismatch { left: usize, right: usize },
    #[error("node {0} is not in the diagram")]
    NodeNotInDiagram(Node),
    #[error("component {comp} is out of range 1..={r}")]
    ComponentOutOfRange { comp: usize, r: usize },
    #[error("invalid bead configuration: {0}")]
    InvalidBeads(String),
    #[error("no bead at position {0}")]
    NoBead(i64),
    #[error("position {0} already holds a bead")]
    Occupied(i64),
    #[error("{0} requires finite e")]
    InfiniteE(&'static str),
    #[error("not a multicore")]
    NotMulticore,
    #[error("s-move precondition violated: {0}")]
    SMove(String),
    #[error("the rim hooks do not leave the same diagram")]
    ComplementMismatch,
    #[error("the valuation of 0 is undefined")]
    ZeroValuation,
    #[error("invalid regime: {0}")]
    Regime(String),
    #[error("{op} is only defined for case {expected} regimes")]
    WrongRegime { op: &'static str, expected: u8 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Jantzen audit mismatch at pair ({lambda}, {mu}): fast path {fast}, defining sum {oracle}")]
    AuditMismatch {
        lambda: String,
        mu: String,
        fast: i64,
        oracle: i64,
    },
}
