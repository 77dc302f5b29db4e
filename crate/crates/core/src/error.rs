use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table does not define a group: {0}")]
    NonGroupTable(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(String),
    #[error("operation requires a cyclic group")]
    NotCyclic,
    #[error("operation requires an abelian group")]
    NotAbelian,
    #[error("set is not a quasi difference set")]
    NotAQds,
    #[error("search space exceeds cap: {0}")]
    SearchCapExceeded(String),
    #[error("search budget of {0} steps exceeded")]
    SearchBudgetExceeded(u64),
    #[error("base set must not be empty")]
    EmptyDelta,
    #[error("structure is not a partial linear space")]
    NotPls,
    #[error("meet of a line with itself is undefined")]
    DuplicateLine,
    #[error("structure has no group provenance")]
    NoProvenance,
    #[error("provenance does not fit: {0}")]
    BadProvenance(String),
    #[error("bad coordinates: {0}")]
    BadCoordinates(String),
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error("map is not a group automorphism")]
    NotGroupAutomorphism,
    #[error("line labels are ambiguous (nontrivial left stabilizer)")]
    LabelMapUnavailable,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Resource-cap failures, as opposed to malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. } | Error::SearchCapExceeded(_) | Error::SearchBudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
