use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("negative exponent {0} on a polynomial (use a rational function)")]
    NegativeExponent(i64),
    #[error("denominator {0} vanishes under the assignment")]
    VanishingDenominator(String),
    #[error("leading monomial of zero")]
    LeadingMonomialOfZero,
    #[error("reduction did not stabilize within {0} steps")]
    ReductionCap(usize),
    #[error("relation set is not valid: {0}")]
    InvalidRelations(String),
    #[error("coefficient {0} is not a rational constant")]
    NotNumeric(String),
    #[error("requires {0} != 0")]
    ExclusionViolated(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{0}` has no printed Casimir")]
    NoPrintedCasimir(String),
    #[error("transformation is not lower-triangular and degree-preserving: {0}")]
    NotDegreePreserving(String),
    #[error("transformation has a zero diagonal entry for {0}")]
    SingularTransformation(String),
    #[error("classification defined for quadratic three-generator algebras")]
    ClassificationShape,
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
