//! Exact checker for the rational identities behind the spectral
//! calculus.
//!
//! Each catalog entry states a handful of equalities between quotients of
//! Laurent polynomials in commuting indeterminates. They are compared by cross
//! multiplication, so nothing is ever divided. The ring elements involved
//! (`Q`, `S`, `P`, `T`) commute with every other quantity in their identity,
//! so each scalar identity transfers to any ring by substitution.

mod catalog;
mod poly;

pub use catalog::{
    entries, entry, verify_identity, verify_identity_with, Entry, Equality, IdentitySet, Lambda4, Report, CATALOG,
    LAMBDA4_EXPANSION,
};
pub use poly::{Frac, MultiPoly, Relations, Var, VARS};
