use thiserror::Error;

use crate::numberfield::FieldElement;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    /// An element of an algebra `K[T]/(g)` with reducible `g` turned out to be a
    /// zero divisor. `factor` is a proper monic factor of `g` over `K`.
    #[error("zero divisor found in algebra generated by {generator}")]
    ZeroDivisor {
        generator: String,
        factor: Vec<FieldElement>,
    },

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("series has no invertible constant term")]
    NonUnitInversion,

    #[error("composition requires an inner series without constant term")]
    BadComposition,

    #[error("reversion requires a series of order exactly 1, found order {0:?}")]
    ReversionOrder(Option<usize>),

    #[error("degenerate curve: {0}")]
    Degenerate(String),

    #[error("Moebius map is singular")]
    SingularMobius,

    #[error("all components vanish at the parameter")]
    AllComponentsVanish,

    #[error("branch is smooth at the parameter")]
    SmoothBranch,

    #[error("branch has multiplicity {0} > 2")]
    HighMultiplicity(usize),

    #[error("truncation order {0} exhausted")]
    TruncationExhausted(usize),

    #[error("the two parameters do not map to the same point")]
    ImagesDiffer,

    #[error("branch at a two-branch point is not smooth")]
    NonSmoothBranch,

    #[error("zero argument")]
    ZeroInput,

    #[error("pencil reduction: {0}")]
    Pencil(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("record {id}: {message}")]
    Invariant { id: u32, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
