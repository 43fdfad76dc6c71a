use thiserror::Error;

use crate::poly::MultiIndex;
use crate::search::SearchResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("multi-index {0} has length {1}, expected {2}")]
    LengthMismatch(MultiIndex, usize, usize),

    #[error("multiplier term {0} appears more than once")]
    DuplicateMultiplierTerm(MultiIndex),

    #[error("multiplier must contain at least one term")]
    EmptyMultiplier,

    #[error("polynomial is not diagonal: off-diagonal entry at ({0}, {1})")]
    NotDiagonal(MultiIndex, MultiIndex),

    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(String, String),

    #[error("matrix dimension {dim} exceeds the limit {limit}")]
    ExplicitLimit { dim: usize, limit: usize },

    #[error("d_max = {0} exceeds the hard limit of {1}")]
    CapExceeded(u32, u32),

    #[error("multi-index {alpha} has degree {found}, expected {expected}")]
    DegreeMismatch {
        alpha: MultiIndex,
        found: u32,
        expected: u32,
    },

    #[error("degree {degree} must exceed 3n = {}", 3 * .n)]
    DomainTooSmall { n: usize, degree: u32 },

    #[error("infeasible parameters: {0}")]
    ParamsInfeasible(String),

    #[error("no epsilon >= 2^-20 gives membership at power <= {0}")]
    EpsilonSearchFailed(u32),

    #[error("polynomial is not in Psi_{0}")]
    NotInPsiD(u32),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("certificate construction failed: {0}")]
    CertificateFailure(String),

    #[error("sign pattern is infeasible at product monomial {0}")]
    Infeasible(MultiIndex),

    #[error("evaluation budget exhausted after {} evaluations", .0.evaluations)]
    BudgetExhausted(Box<SearchResult>),

    #[error("invalid search request: {0}")]
    InvalidSearch(String),

    #[error("lambda = {0} is outside [0, 1]")]
    LambdaOutOfRange(String),

    #[error("pivot dominance violated: |a1| = {a1} <= |b1| = {b1}")]
    PivotDominanceViolated { a1: f64, b1: f64 },

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("decomposed form carries no exact origin")]
    MissingOrigin,

    #[error("diagrams support n = 2 or n = 3, got n = {0}")]
    UnsupportedDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
