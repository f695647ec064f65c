use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// `Internal` is reserved for consistency violations: a value two
/// independent routes must agree on came out different. Callers are
/// expected to abort loudly on it rather than recover.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative input {0} rejected")]
    NegativeInput(i64),
    #[error("input must be positive")]
    ZeroInput,
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(u64),
    #[error("factorization of {n} exceeds trial-division budget {budget}")]
    FactorBudgetExceeded { n: u64, budget: u64 },
    #[error("norm-form budget exceeded: {0}")]
    NormFormBudget(String),
    #[error("surd denominator must be nonzero")]
    ZeroDenominator,
    #[error("integer overflow while normalizing surd")]
    Overflow,
    #[error("form ({0}, {1}, {2}) is not reduced")]
    NotReduced(i64, i64, i64),
    #[error("form ({0}, {1}, {2}) has nonpositive or square discriminant")]
    BadDiscriminant(i64, i64, i64),
    #[error("parity violation: ({s} + {t}*sqrt(d))/2 is not an algebraic integer for d = {d}")]
    ParityViolation { s: String, t: String, d: u64 },
    #[error("hypothesis failure: {0}")]
    HypothesisFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("requested precision {0} bits unsupported (1..=52)")]
    PrecisionUnsupported(u32),
    #[error("character sum for discriminant {delta} is {estimate} away from an integer")]
    PrecisionLoss { delta: u64, estimate: f64 },
    #[error("internal consistency violation: {0}")]
    Internal(String),
}
