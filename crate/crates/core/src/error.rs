use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Mathematical negatives (a failed axiom, an obstructed extension) are not
/// errors; they are reported as values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity {arity} is outside the supported range ({reason})")]
    ArityOutOfRange { arity: usize, reason: &'static str },

    #[error("degree {degree} is outside the configured range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("the algebra is not a multiplicative Hom-Leibniz algebra: {0}")]
    NotValidated(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("invalid example parameters: {0}")]
    InvalidParameters(String),

    #[error("the structure map is not a morphism of the bracket")]
    NotAMorphism,

    #[error("cochain does not commute with the structure map (arity {arity})")]
    IncompatibleCochain { arity: usize },

    #[error("gauge transform must start with the identity")]
    GaugeNotUnipotent,

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("deformation equations fail: {0}")]
    InvalidDeformation(String),

    #[error("all jets beyond order 0 vanish")]
    TrivialJet,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("jet {index} of the {kind} series is not equivariant")]
    NotEquivariant { kind: &'static str, index: usize },

    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
