//! Exact-arithmetic invariants of irreducible quasi-ordinary hypersurface
//! singularities and affine toric varieties.
//!
//! The crate computes, over exact rational/integer arithmetic:
//!
//! - [`lattice`]: Hermite normal forms, kernels, lattice membership and indices;
//! - [`semigroup`]: the semigroup of a quasi-ordinary branch — generators,
//!   relation matrix, Frobenius vector, membership oracles;
//! - [`ideal`]: monomial ideals over the normalization or over a finitely
//!   generated semigroup — logarithmic Jacobian and Jacobian ideals;
//! - [`newton`]: Newton polygons, dual fans and the order exponents `ν̄`;
//! - [`invariants`]: plane-branch numbers and the Poincaré series;
//! - [`deform`]: overweight deformations, the extended relation matrix and
//!   its minors, and the leading-ideal verification.

pub mod deform;
pub mod ideal;
pub mod invariants;
pub mod lattice;
pub mod newton;
pub mod semigroup;

pub use lattice::{Basis, IntMat, Lattice, Rat, RatVec};
