//! Calculus over rings without a multiplicative half: symmetrized series
//! spaces, normal ordering, the Hilbert-kernel products, and the idempotent
//! and F-square-root integrals evaluated without ever forming `½`.

mod basis;
pub mod json;
mod ordering;
mod pencils;

pub use basis::{
    bracket_to_angle, integral_pairing, module_action, BasisIndex, Bivariate, SpaceTag, SymmetrizedSeries,
};
pub use ordering::{
    c_basis_coordinates, c_basis_element, hilbert_double_table, hilbert_product_double, hilbert_product_single,
    hilbert_single_table, normal_order_double, normal_order_double_monomials, normal_order_single,
};
pub use pencils::{
    fsqrt_nohalf, fsqrt_pencil_expansion, idem_from_fsqrt, idem_nohalf, HalfFreeResult, MIN_SECTION, SECTION_TOLERANCE,
};
