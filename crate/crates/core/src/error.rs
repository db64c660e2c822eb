use thiserror::Error;

use crate::field::Level;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is reducible: {0}")]
    ReducibleModulus(String),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("field of order {size} exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field level mismatch: expected {expected:?}, found {found:?}")]
    FieldLevelMismatch { expected: Level, found: Level },
    #[error("index {index} is not an element of {level:?}")]
    InvalidElement { level: Level, index: u64 },
    #[error("{n} does not divide the multiplicative group order {order}")]
    OrderNotDivisible { n: u64, order: u64 },
    #[error("gcd({r}, {p}) != 1")]
    CharacteristicDividesR { r: u64, p: u64 },
    #[error("r = {r} must be at least 3")]
    RTooSmall { r: u64 },
    #[error("r must divide q^2 - 1, but {r} ∤ {order}")]
    BadOrderConstraint { r: u64, order: u64 },
    #[error("selector exponent {0} is not coprime to r")]
    SelectorNotCoprime(u64),
    #[error("selector exponents coincide modulo r")]
    DegenerateSelector,
    #[error("selector shape does not match the branch ({0})")]
    SelectorMismatch(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("map is not a permutation")]
    NotAPermutation,
    #[error("exponent {k} is not coprime to q - 1 = {order}")]
    NotCoprimeExponent { k: u64, order: u64 },
    #[error("maps belong to different field contexts")]
    ContextMismatch,
    #[error("scalar m must be nonzero")]
    ZeroScalar,
    #[error("table has length {found}, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("specification invariant violated: {0}")]
    SpecInvariantViolated(String),
    #[error("interpolation over {size} points exceeds the limit {limit}")]
    InterpolationTooLarge { size: u64, limit: u64 },
}
