use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("convex hull of the configuration is not full-dimensional")]
    NotFullDimensional,
    #[error("configuration is not a circuit (some Gale coefficient vanishes)")]
    NotACircuit,
    #[error("coefficient matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("column {0} of the coefficient matrix is zero")]
    ZeroColumn(usize),
    #[error("Gale dual row {0} is the zero vector")]
    ZeroGaleRow(usize),
    #[error("Gale dual rows do not lie in an open half-plane")]
    Infeasible,
    #[error("degenerate sequence: {0}")]
    DegenerateSequence(&'static str),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("polynomial degree {degree} exceeds the configured maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("height construction failed after {retries} retries")]
    HeightConstructionFailed { retries: u32 },
    #[error("mixed cell {cell} failed verification: {reason}")]
    CellVerificationFailed { cell: usize, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "no t with {target} positive solutions after {halvings} halvings (last count {last_count})"
    )]
    T0NotFound {
        target: usize,
        halvings: u32,
        last_count: usize,
    },
}
