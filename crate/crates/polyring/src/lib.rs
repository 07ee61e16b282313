//! Exact multivariate polynomial arithmetic over cyclotomic fields.
//!
//! Key operations:
//! - `VarFrame`: a named (optionally weighted) coordinate system.
//! - `MultiPoly`: sparse polynomials with `CycloNumber` coefficients, with
//!   arithmetic, iterated partial derivatives, evaluation, composition, and
//!   exact division under the graded-lexicographic order.
//! - `weighted_monomials`: enumeration of the weighted-degree index sets.

pub mod frame;
pub mod indexset;
pub mod poly;

pub use frame::{same_frame, VarFrame};
pub use indexset::{multi_factorial, support_size, weighted_monomials, IndexDescriptor, MultiIndexSet};
pub use poly::MultiPoly;

use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Operands live in different coordinate frames.
    #[error("coordinate frame mismatch: {0}")]
    FrameMismatch(String),
    /// Division left a nonzero remainder.
    #[error("inexact polynomial division")]
    InexactDivision,
    /// A serialized polynomial could not be parsed.
    #[error("malformed serialized polynomial: {0}")]
    Malformed(String),
}
