use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector is not a move")]
    ZeroMove,
    #[error("moves {0:?} and {1:?} are parallel")]
    ParallelMoves((i64, i64), (i64, i64)),
    #[error("a piece needs at least one move")]
    NoMoves,
    #[error("unknown piece `{0}`")]
    UnknownPiece(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point is not a corner of the board")]
    NotACorner,
    #[error("polygon corners must be in strictly convex boundary order")]
    NotConvex,
    #[error("operation not supported on polygon boards")]
    PolygonBoard,
    #[error("linear system is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("inconsistent fit at n={0}")]
    InconsistentFit(i64),
    #[error("no period <= {0} fits")]
    NoPeriod(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("q={q} too small (need q >= {min})")]
    TooSmall { q: usize, min: usize },
    #[error("configuration violates its constraints")]
    ConstraintsUnsatisfied,
    #[error("degenerate transform: image vectors are parallel")]
    Degenerate,
    #[error("constraint system has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
