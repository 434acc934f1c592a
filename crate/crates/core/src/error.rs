use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },

    #[error("cyclotomic context mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    ContextMismatch { left: u32, right: u32 },

    /// The element has a denominator divisible by the chosen prime; retry with another one.
    #[error("denominator divisible by p = {p}")]
    BadPrime { p: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("exponent vector {entries:?} has total degree {found}, expected {expected}")]
    WrongDegree {
        entries: Vec<u32>,
        expected: i64,
        found: i64,
    },

    #[error("intersection dimension m = {m} outside [-1, {max}]")]
    MOutOfRange { m: i64, max: i64 },

    #[error("pole order (sum of (beta_i + 1)) / d is not an integer for beta = {0:?}")]
    NonIntegralPoleOrder(Vec<u32>),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("no {target}x{target} minor with nonzero determinant found within {budget} probes")]
    GoodMinorNotFound { target: usize, budget: usize },

    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
