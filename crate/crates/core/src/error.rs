use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a subgroup of the enclosing lattice")]
    NotASubgroup,
    #[error("lattice has rank {rank}, expected 3")]
    RankDeficient { rank: usize },
    #[error("unknown space group `{0}`")]
    UnknownGroup(String),
    #[error("isometries live in different frames")]
    FrameMismatch,
    #[error("coset closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("invariant sublattice {0} matches no known family")]
    UnmatchedLattice(String),
    #[error("{group}: found {found} marked edge classes, expected {expected}")]
    SignatureCountMismatch { group: String, found: usize, expected: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown edge label `{0}`")]
    UnknownEdge(String),
    #[error("no divisibility constraint fits {0}")]
    ConstraintUnresolved(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
