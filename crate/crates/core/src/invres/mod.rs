//! Invariants, characteristic and minimal polynomials of multiplication
//! maps, and exact resolvents.

mod charpoly;
mod invariant;
mod resolvent;

pub use charpoly::{char_poly, min_poly};
pub use invariant::{
    orbit_sum_invariant, primitive_invariant, primitive_invariant_with_budget,
    tschirnhaus_transform, vandermonde, ExponentVectors, InvariantSpec, PrimitiveInvariants,
    DEFAULT_SEARCH_BUDGET,
};
pub use resolvent::{resolvent, separability_check, transversal_values, Resolvent};
