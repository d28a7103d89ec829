use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("singular system")]
    SingularSystem,

    #[error("non-simplicial cone")]
    NonSimplicialCone,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A fan, polytope or divisor failed one of its structural invariants.
    #[error("{kind}: {detail}")]
    Invariant { kind: InvariantKind, detail: String },

    #[error("not effective: coefficient {index} is negative")]
    NotEffective { index: usize },

    #[error("oracle budget exceeded: {needed} lattice points requested, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("io error: {0}")]
    Io(String),

    /// Two independent computations of the same quantity disagree.
    #[error("verification mismatch: {0}")]
    Inconsistent(String),
}

/// The specific invariant a fan or polytope violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    NonPrimitiveRay,
    DuplicateRay,
    ZeroRay,
    UnusedRay,
    BadRayIndex,
    NonSimplicial,
    DegenerateCone,
    NotComplete,
    NotFano,
    Unbounded,
    Degenerate,
}

impl std::fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InvariantKind::NonPrimitiveRay => "non-primitive ray",
            InvariantKind::DuplicateRay => "duplicate ray",
            InvariantKind::ZeroRay => "zero ray",
            InvariantKind::UnusedRay => "ray not in any maximal cone",
            InvariantKind::BadRayIndex => "ray index out of range",
            InvariantKind::NonSimplicial => "non-simplicial cone",
            InvariantKind::DegenerateCone => "cone not full-dimensional",
            InvariantKind::NotComplete => "fan not complete",
            InvariantKind::NotFano => "not Q-Fano",
            InvariantKind::Unbounded => "fan not complete / not Fano",
            InvariantKind::Degenerate => "degenerate polytope",
        };
        f.write_str(s)
    }
}

impl Error {
    pub(crate) fn invariant(kind: InvariantKind, detail: impl Into<String>) -> Self {
        Error::Invariant {
            kind,
            detail: detail.into(),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::BudgetExceeded { .. } => 4,
            Error::Inconsistent(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
