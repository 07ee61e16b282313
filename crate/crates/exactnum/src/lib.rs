//! Exact arithmetic for arbitrary-precision rationals and cyclotomic fields Q(zeta_N).
//!
//! Key operations:
//! - `Rational`: arbitrary-precision rational numbers (re-exported alias).
//! - `CycloNumber`: elements of Q(zeta_N) in the reduced power basis modulo
//!   the N-th cyclotomic polynomial, with exact field arithmetic.
//! - Embeddings Q(zeta_N) -> Q(zeta_M) for N | M, square roots of positive
//!   rationals via Gauss sums, and JSON serialization.

pub mod cyclo;

pub use cyclo::{
    cyclotomic_polynomial, euler_phi, sqrt_positive_integer, sqrt_rational, CycloNumber,
};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Errors raised by exact-number arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    /// Division by the zero element of the field.
    #[error("division by zero")]
    DivisionByZero,
    /// Attempted to embed Q(zeta_N) into Q(zeta_M) where N does not divide M.
    #[error("cannot embed Q(zeta_{order}) into Q(zeta_{target}): {order} does not divide {target}")]
    IncompatibleOrder { order: u32, target: u32 },
    /// A serialized value could not be parsed.
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the rational `n / 1`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses a rational from decimal numerator/denominator strings.
pub fn rat_from_strings(num: &str, den: &str) -> Result<Rational, NumError> {
    let n: BigInt = num
        .parse()
        .map_err(|_| NumError::Malformed(format!("bad numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| NumError::Malformed(format!("bad denominator {den:?}")))?;
    if d == BigInt::from(0) {
        return Err(NumError::Malformed("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}
