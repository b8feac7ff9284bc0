use thiserror::Error;

/// Errors raised by the algebraic machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid group specification: {0}")]
    InvalidGroupSpec(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("element {0} is out of range for a group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("subgroup is not normal: conjugation by {0} leaves it")]
    NotNormal(usize),
    #[error("binomial condition violated: the two products differ")]
    BinomialCondition,
    #[error("element {element} is not in the subgroup (move M2, position {position})")]
    NotInSubgroup { element: usize, position: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("variable x{var} expects degree {expected} but the assigned element is not homogeneous of that degree")]
    DegreeMismatch { var: u32, expected: usize },
    #[error("polynomial is not multilinear: {0}")]
    NonMultilinear(String),
    #[error("alternated variables have mixed degrees")]
    MixedDegrees,
    #[error("not a good permutation")]
    NotGoodPermutation,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("grading is not connected: support generates a proper subgroup")]
    Disconnected,
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
    #[error("Grassmann truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("truncation {truncation} is too small for a polynomial of degree {degree}")]
    TruncationTooSmall { truncation: usize, degree: usize },
    #[error("invalid Z2 x G factorization: {0}")]
    Factorization(String),
    #[error("polynomial degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
