use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gl(m|n) needs m, n >= 1 (got m = {0}, n = {1})")]
    InvalidRank(usize, usize),
    #[error("element is not in the even part g0: {0}")]
    NotEven(String),
    #[error("Weyl element is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("expected a scalar but found nonconstant terms: {0}")]
    NotScalar(String),
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("image is not contained in the kernel")]
    NotContained,
    #[error("integer eigenvalue search range too large")]
    EigenvalueBoundTooLarge,
    #[error("modules live over different algebras: gl({0}) vs gl({1})")]
    ContextMismatch(String, String),
    #[error("representation property fails on [{0}, {1}]")]
    NotARepresentation(String, String),
    #[error("weight {0} does not define a one-dimensional g0-module")]
    InvalidCharacter(String),
    #[error("module {0} failed unitarity validation")]
    NotUnitary(String),
    #[error("Casimir does not act by a scalar on {0}")]
    NonScalarCasimir(String),
    #[error("Casimir eigenvalues on {0} are not all rational")]
    IrrationalEigenvalues(String),
    #[error("cannot parse module expression {input:?}: {reason}")]
    ParseModule { input: String, reason: String },
    #[error("dimension bookkeeping mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
