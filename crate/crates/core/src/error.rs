use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partial order violation ({kind}) at ({a}, {b}, {c})")]
    PartialOrderViolation {
        kind: OrderAxiom,
        a: String,
        b: String,
        c: String,
    },

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("size overflow: {what} needs {requested} states, cap is {cap}")]
    SizeOverflow {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularH,

    #[error("h-vector entry {index} is not strictly positive")]
    NonpositiveH { index: usize },

    #[error("elements are not comparable")]
    NotComparable,

    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("kernel is not irreducible (state {from} cannot reach {to})")]
    NotIrreducible { from: usize, to: usize },

    #[error("kernel is not stochastic (row {row})")]
    NotStochastic { row: usize },

    #[error("{matrix} is incompatible with the equivalence relation: rows {a1} and {a2} differ on class {class}")]
    IncompatibleMatrix {
        matrix: &'static str,
        a1: usize,
        a2: usize,
        class: usize,
    },

    #[error("offspring law is not exchangeable")]
    NotExchangeable,

    #[error("invalid offspring law: {0}")]
    InvalidLaw(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderAxiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl std::fmt::Display for OrderAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrderAxiom::Reflexivity => "reflexivity",
            OrderAxiom::Antisymmetry => "antisymmetry",
            OrderAxiom::Transitivity => "transitivity",
        })
    }
}
