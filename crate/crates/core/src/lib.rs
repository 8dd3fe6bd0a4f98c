//! Self-dual metrics on the total space of a circle bundle over hyperbolic
//! 3-space minus a finite set of monopole points, together with the machinery
//! needed to certify their symmetries numerically.
//!
//! The crate is organised around the pipeline
//!
//! 1. [`hyperbolic`] — upper-half-space model, quaternionic Möbius isometries,
//!    geodesics and stabilizer classification of finite point sets;
//! 2. [`monopole`] — the monopole potential `V`, the explicit global
//!    connection for collinear configurations, chart atlas and transition
//!    functions, and the curvature identity `d(f dθ₃) = *dV`;
//! 3. [`metric`] — the metric tensor on the free locus, coordinate changes,
//!    and a curvature engine (scalar curvature, Riemann, Weyl halves);
//! 4. [`lift`] — lifts of hyperbolic isometries to bundle maps, the
//!    `S¹`-families of rotation lifts, the extra involution for two monopole
//!    points, conformality certification and involution group tables.
//!
//! Differentiation is exact: first derivatives use dual numbers, second
//! derivatives use a dense second-order jet ([`dual`]). Finite differences are
//! kept around as an independent cross-check, never as the primary route.

pub mod cx;
pub mod dual;
pub mod error;
pub mod group;
pub mod hyperbolic;
pub mod lift;
pub mod linalg;
pub mod metric;
pub mod monopole;
pub mod sample;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
