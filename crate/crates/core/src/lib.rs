//! Computational toolkit for the class `BS(α)` of normalized analytic
//! functions whose transfer ratio `zf'/f - 1` is subordinate to the
//! Booth-lemniscate map `F_α(z) = z/(1 - αz²)`.
//!
//! * [`series`]: truncated complex power-series algebra.
//! * [`geometry`]: `F_α`, its image `D(α)`, and the strip maps `P_{α,β}`.
//! * [`curves`]: Persian, Cassini and Bernoulli quartics.
//! * [`class`]: constructing and certifying members.
//! * [`bounds`]: randomized verifiers for the coefficient inequalities.

pub mod bounds;
pub mod class;
pub mod curves;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod series;

pub use error::{Error, Result};
pub use geometry::{BoothParameter, PlanePoint, StripParams};
pub use series::TruncatedSeries;
