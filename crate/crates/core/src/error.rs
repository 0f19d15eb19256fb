use thiserror::Error;

use crate::scalar::FieldSpec;

/// Everything that can go wrong while building or checking a structure.
///
/// Failed axioms are not errors: checkers return a [`CheckReport`] instead.
/// Errors are reserved for violated preconditions and malformed input.
///
/// [`CheckReport`]: crate::report::CheckReport
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed-field operands: {0} and {1}")]
    MixedFields(FieldSpec, FieldSpec),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot parse scalar {text:?} over {field}")]
    ScalarParse { text: String, field: FieldSpec },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index:?} out of bounds for shape {shape:?}")]
    IndexOutOfBounds { index: Vec<usize>, shape: Vec<usize> },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("weak antipode is not invertible")]
    AntipodeNotInvertible,

    #[error("weak Hopf algebra is not biperfect ({0})")]
    NotBiperfect(String),

    #[error("weak Hopf algebra is not perfect ({0})")]
    NotPerfect(String),

    #[error("monoid is not a Clifford monoid: {0}")]
    NotClifford(String),

    #[error("invalid monoid table: {0}")]
    InvalidMonoid(String),

    #[error("edge map {edge} is not a group homomorphism")]
    NotAHomomorphism { edge: String },

    #[error("composite homomorphism {from} -> {to} depends on the path taken")]
    PathDependentHomomorphisms { from: String, to: String },

    #[error("invalid Clifford specification: {0}")]
    InvalidCliffordSpec(String),

    #[error("modulus {to} does not divide {from}")]
    NonDivisorModulus { from: u64, to: u64 },

    #[error("bilinear form does not make a weak Hopf skew-pair: {0}")]
    SkewPairNotCertified(String),

    #[error("actions do not form a quasi-matched pair: {0}")]
    QuasiMatchedFailed(String),

    #[error("product carries no quantum-double provenance")]
    MissingProvenance,

    #[error("action violates the module laws: {0}")]
    ModuleLawFailure(String),

    #[error("crossed bimodule laws fail: {0}")]
    CrossedLawsFailure(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error("expansion of {what} needs {needed} terms, above the limit of {limit}")]
    TooManyTerms { what: String, needed: u128, limit: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
