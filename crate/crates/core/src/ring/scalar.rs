use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{simplest_rational_between, Ring};

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn from_int(&self, n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(&self, r: &BigRational) -> Option<Self> {
        Some(Complex64::new(r.to_f64()?, 0.0))
    }
    fn half(&self) -> Option<Self> {
        Some(Complex64::new(0.5, 0.0))
    }
    fn try_invert(&self) -> Option<Self> {
        if *self == Complex64::new(0.0, 0.0) || !self.is_finite() {
            None
        } else {
            Some(self.inv())
        }
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn embed_complex(&self, c: Complex64) -> Option<Self> {
        Some(c)
    }
    fn from_diagonal(&self, d: &[Complex64]) -> Option<Self> {
        (d.len() == 1).then(|| d[0])
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn from_int(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn half(&self) -> Option<Self> {
        Some(BigRational::new(1.into(), 2.into()))
    }
    fn try_invert(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn norm(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn simplest_within(&self, eps: f64) -> Option<Self> {
        let e = BigRational::from_f64(eps)?;
        Some(simplest_rational_between(&(self - &e), &(self + &e)))
    }
}

/// Plain integers: no half, only `±1` invertible.
impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn from_int(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn half(&self) -> Option<Self> {
        None
    }
    fn try_invert(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
    fn norm(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}
