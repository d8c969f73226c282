use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operators live on different bases")]
    BasisMismatch,
    #[error("operator has no nonzero grade shift; use exp_diag or expm_dense")]
    NotGraded,
    #[error("operator is not diagonal")]
    NotDiagonal,
    #[error("non-finite matrix entry encountered")]
    NonFinite,
    #[error("label {0} is not part of the truncated basis")]
    LabelOutOfBasis(String),
    #[error("cutoff {got} is below the minimum {required}")]
    CutoffTooSmall { required: usize, got: usize },
    #[error("discrete-series weight k = {0} must exceed 1/2")]
    InvalidWeight(f64),
    #[error("index m must be a nonzero finite real, got {0}")]
    InvalidIndex(f64),
    #[error("hypergeometric denominator (c)_j vanishes at j = {j}")]
    DegenerateHypergeometric { j: usize },
    #[error("det M = {0}, expected 1")]
    Determinant(f64),
    #[error("matrix is not of the Jacobi group shape")]
    NotJacobiMatrix,
    #[error("Im tau = {0} is not positive")]
    NotInUpperHalfPlane(f64),
    #[error("|w| = {0} must be strictly below 1")]
    OutsideUnitDisk(f64),
    #[error("polynomial variables are {got}, expected {expected}")]
    VariableMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("closed form needs n' >= n, got n = {n}, n' = {n_prime}")]
    IndexOrder { n: usize, n_prime: usize },
    #[error("word reaches grade {required} but the basis stops at grade {max_grade}")]
    CutoffBudget { required: usize, max_grade: usize },
    #[error("Mandel parameter undefined: <N> = 0")]
    VacuumMandel,
    #[error("truncation leakage {leakage:e} exceeds budget {budget:e}")]
    Leakage { leakage: f64, budget: f64 },
    #[error("zero-locus expression is negative for n = {n}")]
    NoZeroLocus { n: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
