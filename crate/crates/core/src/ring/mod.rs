//! Ring contract and concrete instances.
//!
//! Elements carry their own shape (a matrix knows its dimension), so the
//! additive and multiplicative units are obtained from an existing element
//! with [`Ring::zero_like`] and [`Ring::one_like`].

mod axioms;
mod cayley;
pub mod json;
mod matrix;
mod scalar;
mod seminorm;
mod trapping;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use axioms::{axiom_check, AxiomReport, AxiomResult};
pub use cayley::{cayley, cayley_inv};
pub use matrix::Matrix;
pub use seminorm::{seminorm_eval, Seminorm, SeminormFamily};
pub use trapping::Trapping;

/// Default absolute tolerance for approximate equality in float rings.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A value-semantic element of a unital ring.
pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// The element `½·1`, when the ring contains it.
    fn half(&self) -> Option<Self>;

    /// Two-sided inverse, if it exists.
    fn try_invert(&self) -> Option<Self>;

    /// The ring's default seminorm (index 0 of its standard family).
    fn norm(&self) -> f64;

    /// Exact rings compare with `==`; float rings with a tolerance.
    fn is_exact(&self) -> bool;

    fn is_zero(&self) -> bool;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn from_int(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = one;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            k >>= 1;
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => self.from_int(v),
            None => {
                let two32 = self.from_int(1 << 32);
                let (sign, digits) = n.to_u32_digits();
                let mut acc = self.zero_like();
                for d in digits.iter().rev() {
                    acc = acc.mul(&two32).add(&self.from_int(*d as i64));
                }
                if sign == num_bigint::Sign::Minus {
                    acc.neg()
                } else {
                    acc
                }
            }
        }
    }

    /// `r·1`, when the denominator is invertible in the ring.
    fn from_ratio(&self, r: &BigRational) -> Option<Self> {
        let num = self.from_bigint(r.numer());
        if r.denom().is_one() {
            return Some(num);
        }
        let den = self.from_bigint(r.denom()).try_invert()?;
        Some(num.mul(&den))
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn dist(&self, other: &Self) -> f64 {
        self.sub(other).norm()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let d = self.sub(other);
        if self.is_exact() {
            d.is_zero()
        } else {
            d.norm() <= tol
        }
    }

    /// `c·1` for rings embeddable in complex matrices.
    fn embed_complex(&self, _c: Complex64) -> Option<Self> {
        None
    }

    /// Diagonal element with the given entries, shaped like `self`.
    fn from_diagonal(&self, _d: &[Complex64]) -> Option<Self> {
        None
    }

    /// The simplest exact element within `eps` of `self` (entry-wise), when
    /// the ring supports rational reconstruction.
    fn simplest_within(&self, _eps: f64) -> Option<Self> {
        None
    }
}

/// Simplest rational in the closed interval `[lo, hi]` (Stern–Brocot descent).
pub(crate) fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || Zero::is_zero(lo) || Zero::is_zero(hi) {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts.
    let lo_frac = lo.clone() - fl.clone();
    let hi_frac = hi.clone() - fl.clone();
    let inner = simplest_rational_between(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}
