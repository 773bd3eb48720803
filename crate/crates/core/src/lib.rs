//! Spectral functional calculus over generic rings.
//!
//! Functions like the sign, square root, idempotent splitter and the
//! ᶠ-square-root of a ring element are defined as the `z⁰` coefficient of a
//! resolvent-type Laurent series. This crate provides the series machinery,
//! the transformation kernels used to regularize double integrals, numerical
//! and exact backends for the spectral integrals, the normal-ordering calculus
//! that works without `½`, and an exact checker for the underlying rational
//! identities.

pub mod error;
pub mod fixture;
pub mod halffree;
pub mod identity;
pub mod kernels;
pub mod laurent;
pub mod ring;
pub mod spectral;

pub use error::{Error, Result};
pub use laurent::{GrowthClass, LaurentSeries, WeightClass};
pub use ring::{Matrix, Ring, SeminormFamily, Trapping};
