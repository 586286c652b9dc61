//! Exact computation in reduced finitary power monoids.
//!
//! A monoid `H` is described by a [`monoid::MonoidSpec`] inside an ambient
//! group `Z^d ⊕ Z/n₁ ⊕ … ⊕ Z/nₖ`; finite identity-containing subsets of `H`
//! form the power monoid in [`powmon`]. The [`iso`] module builds
//! translation isomorphisms `X ↦ aX` between power monoids and the
//! [`suites`] module checks their structural laws on seeded samples.

pub mod ambient;
pub mod cli;
pub mod iso;
mod json;
pub mod monoid;
pub mod powmon;
mod report;
pub mod structure;
pub mod suites;

pub use ambient::{GroupElement, GroupSignature};
pub use monoid::{MonoidSpec, Window};
pub use powmon::FinSubset1;
