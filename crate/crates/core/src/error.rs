use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("evaluation point is a pole")]
    PoleAtPoint,
    #[error("evaluation point s must avoid 0, 1 and -1")]
    ExcludedEvaluationPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("bad tensor positions: {0}")]
    BadPositions(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BmwError {
    #[error("R-matrix is not invertible")]
    NotInvertible,
    #[error("nu = {0} is not admissible (must avoid 0, q and -q^-1)")]
    InadmissibleNu(String),
    #[error("K^2 = mu K fails: the operator is not of BMW type")]
    KappaNotIdempotentScaled,
    #[error("operator is not skew invertible")]
    NotSkewInvertible,
    #[error("K has rank {0}, expected 1")]
    RankNotOne(usize),
    #[error("characteristic polynomial of X violates reciprocity: {0}")]
    ReciprocityViolation(String),
    #[error("not of BMW spectral type: {0}")]
    NotBMWSpectralType(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("build self-check failed: {0}")]
    BuildSelfCheckFailed(String),
    #[error("invalid twist parameters: {0}")]
    InvalidTwistParameters(String),
    #[error("twist is not compatible with the R-matrix")]
    TwistIncompatible,
    #[error("closed-form multiparametric R-matrix differs from the generic twist")]
    ClosedFormMismatch,
    #[error(transparent)]
    Bmw(#[from] BmwError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
