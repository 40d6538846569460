//! Exact computational algebra for corings over rings with local units.
//!
//! The crate builds everything from one exact kernel: rational linear
//! algebra ([`linalg`]) under graded presentations of rings ([`ring`]),
//! unital bimodules ([`module`]) and tensor products as explicit quotient
//! spaces ([`tensor`]). On top sit corings and comodules with their law
//! checkers ([`coring`]), the explicit coring constructions
//! ([`constructors`]), the bicategory of corings ([`bicategory`]) and the
//! dual-basis adjunction with base ring extension ([`adjunction`]).
//!
//! All law checks are exact matrix identities over the rationals; there are
//! no tolerances anywhere.

pub mod linalg;
pub mod bicategory;
pub mod catalog;
pub mod constructors;
pub mod coring;
pub mod module;
pub mod tensor;
pub mod report;
pub mod ring;
pub mod scalar;

pub use linalg::{LinalgError, Matrix, QuotientSpace};
pub use report::{CheckStatus, Failure, Report};
pub use ring::{
    corner, ground_ring, idempotent_leq, local_unit_for, matrix_ring, path_algebra, verify_ring,
    GradedRing, InfiniteMatrixRing, Quiver, RingBuilder, RingElement, RingError, RingMorphism,
};
pub use scalar::Scalar;
