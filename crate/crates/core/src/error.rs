use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative power of a non-unit Laurent polynomial")]
    NegativePowerOfNonUnit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("evaluation at zero with negative exponents present")]
    EvalAtZero,
    #[error("rational function has a pole at s = 1")]
    PoleAtOne,
    #[error("odd power of s cannot be evaluated at a rational q")]
    OddPower,
    #[error("interpolation points are not pairwise distinct")]
    RepeatedPoints,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed index set: {0}")]
    MalformedIndexSet(String),
    #[error("element is not a weight vector")]
    NotAWeightVector,
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("vector is not proportional to the highest weight vector")]
    NotProportional,
    #[error("module generation exceeded the ambient dimension {0}")]
    RankCeiling(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
