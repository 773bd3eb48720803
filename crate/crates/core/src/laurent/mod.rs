//! Truncated two-sided Laurent series over a [`Ring`].
//!
//! A series stores the coefficients inside an explicit window; everything
//! outside the window is zero by truncation. Each series also carries a
//! growth class, which decides which products are well defined.

pub mod json;
mod lambda;
mod ops;
mod weight;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ring::Ring;
use crate::{Error, Result};

pub use lambda::{lambda, lambda_signs};
pub use ops::{
    integrate_z0, integrate_z0_two_var, invert_unit_pencil, FLOAT_DECAY_THRESHOLD, limit_at_one, scale_by_t, series_arith, transform_variable,
    weighted_seminorm, SeriesOp, Substitution,
};
pub use weight::WeightClass;

/// Coefficient-decay regimes, ordered by continuous inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    FiniteRing,
    RapidRing,
    SummableRing,
    BoundedModule,
    PolyModule,
    FormalModule,
}

impl GrowthClass {
    /// Closed under multiplication. One-sided power series of polynomial or
    /// formal growth still form rings.
    pub fn is_ring(self, one_sided: bool) -> bool {
        match self {
            GrowthClass::FiniteRing | GrowthClass::RapidRing | GrowthClass::SummableRing => true,
            GrowthClass::PolyModule | GrowthClass::FormalModule => one_sided,
            GrowthClass::BoundedModule => false,
        }
    }

    pub fn join(self, other: GrowthClass) -> GrowthClass {
        self.max(other)
    }
}

#[derive(Clone, Debug)]
pub struct LaurentSeries<R> {
    coeffs: BTreeMap<i64, R>,
    lo: i64,
    hi: i64,
    class: GrowthClass,
    one_sided: bool,
    proto: R,
    tail_bound: Option<f64>,
}

impl<R: Ring> LaurentSeries<R> {
    pub fn zero(proto: &R) -> Self {
        LaurentSeries {
            coeffs: BTreeMap::new(),
            lo: 0,
            hi: 0,
            class: GrowthClass::FiniteRing,
            one_sided: true,
            proto: proto.zero_like(),
            tail_bound: None,
        }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: R, n: i64) -> Self {
        let mut s = Self::zero(&c);
        s.lo = n;
        s.hi = n;
        s.one_sided = n >= 0;
        s.insert(n, c);
        s
    }

    /// Series with the given coefficients; the window is the support hull.
    pub fn from_coeffs(proto: &R, coeffs: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut s = Self::zero(proto);
        let mut first = true;
        for (n, c) in coeffs {
            if first {
                s.lo = n;
                s.hi = n;
                first = false;
            } else {
                s.lo = s.lo.min(n);
                s.hi = s.hi.max(n);
            }
            let prev = s.coeff(n);
            s.insert(n, prev.add(&c));
        }
        s.one_sided = s.lo >= 0;
        s
    }

    /// From rational integer coefficients `[(exponent, value)]`.
    pub fn from_ints(proto: &R, coeffs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(proto, coeffs.iter().map(|&(n, v)| (n, proto.from_int(v))))
    }

    pub fn with_window(mut self, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        self.coeffs.retain(|&n, _| n >= lo && n <= hi);
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn with_class(mut self, class: GrowthClass) -> Self {
        self.class = class;
        self
    }

    pub fn with_one_sided(mut self, one_sided: bool) -> Self {
        self.one_sided = one_sided;
        self
    }

    pub fn with_tail_bound(mut self, bound: Option<f64>) -> Self {
        self.tail_bound = bound;
        self
    }

    fn insert(&mut self, n: i64, c: R) {
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    pub fn set_coeff(&mut self, n: i64, c: R) {
        self.lo = self.lo.min(n);
        self.hi = self.hi.max(n);
        if n < 0 {
            self.one_sided = false;
        }
        self.insert(n, c);
    }

    pub fn coeff(&self, n: i64) -> R {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| self.proto.clone())
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn class(&self) -> GrowthClass {
        self.class
    }

    pub fn is_one_sided(&self) -> bool {
        self.one_sided
    }

    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_ring_class(&self) -> bool {
        self.class.is_ring(self.one_sided)
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> LaurentSeries<T> {
        let proto = f(&self.proto);
        let mut out = LaurentSeries::zero(&proto)
            .with_class(self.class)
            .with_one_sided(self.one_sided)
            .with_tail_bound(self.tail_bound);
        out.lo = self.lo;
        out.hi = self.hi;
        for (n, c) in self.terms() {
            out.insert(n, f(c));
        }
        out
    }

    /// Multiply every coefficient on the left by `c`.
    pub fn scale_left(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs.clear();
        for (n, a) in self.terms() {
            out.insert(n, c.mul(a));
        }
        out
    }

    pub fn scale_right(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs.clear();
        for (n, a) in self.terms() {
            out.insert(n, a.mul(c));
        }
        out
    }

    /// Evaluate a finite series at a ring element; negative powers need an
    /// inverse of `z`.
    pub fn eval_at(&self, z: &R) -> Result<R> {
        let z_inv = if self.coeffs.keys().any(|&n| n < 0) {
            Some(z.try_invert().ok_or_else(|| Error::NotInvertible("evaluation point".into()))?)
        } else {
            None
        };
        let mut acc = self.proto.clone();
        for (n, c) in self.terms() {
            let p = if n >= 0 {
                z.pow(n as u32)
            } else {
                z_inv.as_ref().unwrap().pow((-n) as u32)
            };
            acc = acc.add(&c.mul(&p));
        }
        Ok(acc)
    }

    /// All coefficients agree (exactly, or within `tol` for float rings).
    pub fn approx_eq_series(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter().all(|n| self.coeff(n).approx_eq(&other.coeff(n), tol))
    }
}

impl<R: Ring> Ring for LaurentSeries<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.proto)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.proto.one_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.lo = self.lo.min(rhs.lo);
        out.hi = self.hi.max(rhs.hi);
        out.class = self.class.join(rhs.class);
        out.one_sided = self.one_sided && rhs.one_sided;
        out.tail_bound = sum_bounds(self.tail_bound, rhs.tail_bound);
        for (n, c) in rhs.terms() {
            let v = out.coeff(n).add(c);
            out.insert(n, v);
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.clear();
        for (n, c) in self.terms() {
            out.insert(n, c.neg());
        }
        out
    }
    /// Exact convolution of the truncated windows.
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.proto);
        out.lo = self.lo + rhs.lo;
        out.hi = self.hi + rhs.hi;
        out.class = self.class.join(rhs.class);
        out.one_sided = self.one_sided && rhs.one_sided;
        out.tail_bound = match (self.tail_bound, rhs.tail_bound) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0.0) * rhs.norm() + b.unwrap_or(0.0) * self.norm()),
        };
        let mut acc: BTreeMap<i64, R> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                let p = a.mul(b);
                match acc.get_mut(&(i + j)) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(i + j, p);
                    }
                }
            }
        }
        for (n, c) in acc {
            out.insert(n, c);
        }
        out
    }
    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.proto.from_int(n))
    }
    fn from_ratio(&self, r: &num_rational::BigRational) -> Option<Self> {
        Some(Self::constant(self.proto.from_ratio(r)?))
    }
    fn half(&self) -> Option<Self> {
        Some(Self::constant(self.proto.half()?))
    }
    /// Only monomials with invertible coefficient are inverted here; general
    /// pencils go through [`invert_unit_pencil`].
    fn try_invert(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (n, c) = self.terms().next()?;
        Some(Self::monomial(c.try_invert()?, -n))
    }
    fn norm(&self) -> f64 {
        self.terms().map(|(_, c)| c.norm()).sum()
    }
    fn is_exact(&self) -> bool {
        self.proto.is_exact()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }
    fn embed_complex(&self, c: Complex64) -> Option<Self> {
        Some(Self::constant(self.proto.embed_complex(c)?))
    }
}

fn sum_bounds(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(0.0) + b.unwrap_or(0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn class_order_and_ring_flags() {
        use GrowthClass::*;
        assert!(FiniteRing < RapidRing && RapidRing < SummableRing && SummableRing < BoundedModule);
        assert!(BoundedModule < PolyModule && PolyModule < FormalModule);
        assert!(SummableRing.is_ring(false));
        assert!(!BoundedModule.is_ring(false));
        assert!(!PolyModule.is_ring(false));
        assert!(PolyModule.is_ring(true) && FormalModule.is_ring(true));
    }

    #[test]
    fn window_contains_support() {
        let s = LaurentSeries::from_ints(&q(0, 1), &[(-2, 1), (3, 4)]);
        assert_eq!(s.window(), (-2, 3));
        assert!(!s.is_one_sided());
        let t = s.with_window(0, 5);
        assert_eq!(t.coeff(-2), q(0, 1));
        assert_eq!(t.coeff(3), q(4, 1));
    }

    #[test]
    fn eval_with_negative_powers() {
        let s = LaurentSeries::from_ints(&q(0, 1), &[(-1, 2), (0, 1), (2, 1)]);
        assert_eq!(s.eval_at(&q(2, 1)).unwrap(), q(6, 1));
        assert!(s.eval_at(&q(0, 1)).is_err());
    }

    #[test]
    fn monomial_inverse() {
        let m = LaurentSeries::monomial(q(2, 1), 3);
        let inv = m.try_invert().unwrap();
        assert_eq!(inv.coeff(-3), q(1, 2));
        assert!(LaurentSeries::from_ints(&q(0, 1), &[(0, 1), (1, 1)]).try_invert().is_none());
    }
}
