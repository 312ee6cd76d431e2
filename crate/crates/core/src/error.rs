use thiserror::Error;

use crate::ff::MAX_DEGREE;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is outside the supported range (p < 65536)")]
    PrimeTooLarge(u64),

    #[error("extension degree must lie in 1..={max}, got {0}", max = MAX_DEGREE)]
    BadDegree(usize),

    #[error("modulus must be monic of degree >= 1")]
    BadModulus,

    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("operation requires odd characteristic")]
    EvenCharacteristic,

    #[error("cannot parse field element {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("search space of {size} elements exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("element is not in the subfield of degree {0}")]
    NotInSubfield(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("internal construction check failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
