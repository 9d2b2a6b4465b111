//! Finite-field tower `F_p ⊂ F_q ⊂ F_{q'}` with `q = p^t` and `q' = q^alpha`.

mod ctx;
mod field;
pub mod poly;

pub use ctx::{FieldCtx, FieldElem, FieldSpec, DEFAULT_ENUM_CAP};
pub use field::{Gf, Level, TABLE_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1 (t = {t}, alpha = {alpha})")]
    ZeroDegree { t: usize, alpha: usize },
    #[error("p = {0} exceeds the supported bound 2^61")]
    PrimeTooLarge(u64),
    #[error("field of order {p}^{degree} does not fit in 64 bits")]
    FieldTooLarge { p: u64, degree: usize },
    #[error("field of order {order} exceeds the enumeration cap {cap}")]
    EnumerationCap { order: u64, cap: u64 },
    #[error("invalid modulus: {0}")]
    BadPolynomial(String),
    #[error("modulus {0:?} is not irreducible")]
    NotIrreducible(Vec<u64>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: Level, right: Level },
    #[error("code {code} is not an element of a field of order {order}")]
    NotInField { code: u64, order: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector length {len} is not divisible by alpha = {alpha}")]
    LengthNotDivisible { len: usize, alpha: usize },
}
