//! Finite complex reflection groups: a catalog with exact generator matrices
//! and basic invariants, breadth-first enumeration, reflection/hyperplane
//! extraction, regularity counts, and the Reynolds/Molien verification
//! oracles, together with invariantization and the discriminant.

use thiserror::Error;

mod catalog;
mod group;
mod invariantize;

pub use catalog::{catalog_group, CatalogTriplet};
pub use group::{Hyperplane, ReflectionGroup, DEFAULT_CAP};
pub use invariantize::{
    discriminant, discriminant_form, invariantize, jacobian, poly_det, MonomialBasisCache,
};

/// Errors reported by the group layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    /// The group name is not in the catalog.
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    /// The group name is recognized but the parameters fall outside the
    /// catalog (for G(m,p,n) with 1 < p < m the a(d1) = b(d1) regularity
    /// criterion fails, so no admissible triplet exists).
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    /// Enumeration exceeded the configured element cap.
    #[error("enumeration cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },
    /// The Molien series does not factor over the declared degrees.
    #[error("Molien series does not factor over the declared degrees")]
    FactorizationFailed,
    /// A polynomial could not be expressed in the requested invariants.
    #[error("invariantization failed: {0}")]
    InvariantizationFailed(String),
}
