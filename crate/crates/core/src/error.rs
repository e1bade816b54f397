use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("2cos(pi/{m}) is not in Q(2cos(pi/{field_m})): {m} does not divide {field_m}")]
    NotDivisor { m: u64, field_m: u64 },

    #[error("field mismatch: Q(2cos(pi/{left})) vs Q(2cos(pi/{right}))")]
    FieldMismatch { left: u64, right: u64 },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("modular rank needs rational entries; field has degree {degree}")]
    ModularOverExtension { degree: usize },

    #[error("cannot parse graph spec {spec:?}: {reason}")]
    GraphParse { spec: String, reason: String },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("generator set {0:?} is not independent")]
    NotIndependent(Vec<usize>),

    #[error("linear solve failed: {0}")]
    SolveFailed(String),

    #[error("matrix budget exceeded: need about {needed_mb} MiB, budget is {budget_mb} MiB")]
    BudgetExceeded { needed_mb: u64, budget_mb: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
