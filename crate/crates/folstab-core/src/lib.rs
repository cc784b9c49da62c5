//! Exact-arithmetic stability invariants for polarized foliated varieties.
//!
//! The crate computes the valuative invariants attached to an adjoint
//! polarized foliated structure at an interpolation parameter `t`: mixed log
//! discrepancies, pseudo-effective and expected-vanishing thresholds, the
//! mixed beta invariant, candidate alpha/delta bounds, Donaldson-Futaki,
//! Ding and J functionals of test-configuration data, wall-crossing
//! intervals in `t`, finite-level basis-type invariants, and the epsilon-lc
//! boundedness certificate.
//!
//! All arithmetic is exact rational. Infimum-type invariants range over
//! finite, user-supplied candidate valuation sets and are certified upper
//! bounds: they can refute stability, never prove it.

pub mod affine;
pub mod error;
pub mod finite_level;
pub mod invariants;
pub mod model;
pub mod piecewise;
pub mod poly;
pub mod rational;
pub mod stability;
pub mod testconfig;

pub use affine::AffineInT;
pub use error::{Error, Result};
pub use model::{
    CanonicalRelation, DivisorOrders, FoliatedModel, Incidence, Polarization, ValuationRecord,
    VolScaling,
};
pub use piecewise::PiecewisePoly;
pub use poly::UniPoly;
pub use rational::Rational;
