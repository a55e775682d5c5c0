use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate cover {upper} -> {lower}")]
    DuplicateCover { upper: String, lower: String },
    #[error("cover {upper} -> {lower} does not drop dimension by exactly one")]
    BadCoverDimension { upper: String, lower: String },
    #[error("element `{0}` has positive dimension but no lower cover")]
    OrphanElement(String),
    #[error("covers form a cycle through `{0}`")]
    CycleInOrder(String),
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("host complex is not oriented thin: {0}")]
    HostNotThin(String),
    #[error("not a constructible submolecule: {0}")]
    NotSubmolecule(String),
    #[error("boundaries do not match: {0}")]
    BoundaryMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not an inclusion: {0}")]
    NotAnInclusion(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("subset is not closed: `{0}` has a face outside it")]
    NotClosed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
