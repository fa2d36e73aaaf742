//! Exact computations with matroid fans: Bergman fans, CSM cycles by two
//! independent routes, weighted-fan calculus (balancing, stars, stable
//! intersection, recession) and Noether's formula for lattice 3-polytopes.
//!
//! All arithmetic is over the integers or the rationals; no floating point
//! enters any decision.

// `Cone` caches its H-representation in a `OnceLock` that equality, ordering
// and hashing ignore, so cones are sound map keys.
#![allow(clippy::mutable_key_type)]

pub mod bergman;
pub mod counterexamples;
pub mod csm;
pub mod matroid;
pub mod noether;
pub mod polyfan;
pub mod polynomial;

pub use bergman::{bergman_fan, support_contains, BergmanError, QuotientConvention};
pub use csm::{csm_cycle, csm_total, psi_polynomial, CsmCycle, CsmError};
pub use matroid::{ElementSet, Flat, Matroid, MatroidError};
pub use noether::{LatticePolytope3, NoetherError, UnimodularTriangulation};
pub use polyfan::{Cone, FanError, PolyhedralCycle, WeightedFan};
pub use polynomial::Polynomial;
