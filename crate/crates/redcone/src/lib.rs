//! Exact-arithmetic invariants of small rational 4-manifolds
//! `CP^2 # k(-CP^2)`, `k <= 8`: the chamber structure of the normalized
//! reduced symplectic cone, Cremona reduction of classes and forms, root
//! and exceptional-class enumeration, and (for `k = 5`) the
//! symplectomorphism-group invariants per chamber, backed by a sphere
//! braid group abelianization engine.
//!
//! All arithmetic is exact: integer classes and arbitrary-precision
//! rational areas. No floating point anywhere.

pub mod braid;
pub mod cone;
pub mod cremona;
mod error;
pub mod lattice;
pub mod roots;
pub mod smcg;
pub mod snf;

pub use error::{Error, Result};
pub use lattice::{HomologyClass, Rational, SymplecticVector};
