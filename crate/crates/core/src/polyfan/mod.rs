//! Rational polyhedral cones and weighted fans over `ℤ^n`: canonical forms,
//! balancing, stars, stable intersection, recession cycles and the wedge-power
//! dimensions `F_p`.

mod compare;
mod cone;
mod dd;
mod fan;
mod intersect;
mod json;
pub mod lattice;
mod recession;

use thiserror::Error;

pub use compare::cycles_equal;
pub use cone::{Cone, HRep};
pub use fan::{BalanceReport, Imbalance, WedgeIndex, WeightedFan};
pub use intersect::{stable_intersection, stable_intersection_with, IntersectionOptions};
pub use json::{parse_rational, CellJson, FanJson};
pub use lattice::primitive;
pub use recession::{recession_cycle, PolyCell, PolyhedralCycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone of dimension {found} in a fan of dimension {expected}")]
    NotPure { expected: usize, found: usize },
    #[error("cone is not a face of any cone of the fan")]
    ConeNotInFan,
    #[error("cycle has dimension {0}, expected 0")]
    NotZeroDimensional(usize),
    #[error("no generic displacement found after {0} attempts")]
    GenericityFailure(usize),
    #[error("recession cones do not form a fan")]
    RecessionNotFan,
    #[error("fan is empty")]
    EmptyFan,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
