//! The projective model of the twistor space for two monopole points: an
//! intersection of two quadrics in CP⁵ with four ordinary nodes, its real
//! structure and torus action, the classification of automorphisms commuting
//! with the real structure, the small resolutions that realize the twistor
//! space, and the Einstein–Weyl picture of the two semi-free circle actions.
//!
//! [`model`] builds the quadric pair and decides span preservation;
//! [`conics`] tracks the four torus-invariant conics; [`minitwistor`]
//! projects to the two quadric surfaces and samples the variety;
//! [`resolution`] carries the divisor-cone bookkeeping, the lifting census
//! and the quotient group; [`ew`] handles the plane regions, involutions and
//! the dual action; [`semifree`] the circle-subgroup weight census; and
//! [`exact`] an exact-arithmetic backstop for the span tests.

pub mod conics;
pub mod error;
pub mod ew;
pub mod exact;
pub mod minitwistor;
pub mod model;
pub mod resolution;
pub mod semifree;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
