use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is not exactly divisible: {0}")]
    NotDivisible(String),
    #[error("truncation orders or variable tables differ: {0}")]
    OrderMismatch(String),
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("operands belong to different Lie algebras")]
    SpecMismatch,
    #[error("pairing is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("pairing is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("unsupported Lie algebra family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("odd coefficient beta_{0} is nonzero for a symplectic family")]
    OddBetaForSp(usize),
    #[error("algebra does not have the PBW property: {0}")]
    NotFlat(String),
    #[error("Young diagram {0:?} is not rectangular")]
    NotRectangular(Vec<usize>),
    #[error("Shapovalov quotient did not terminate by degree {0}")]
    NonTerminating(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
