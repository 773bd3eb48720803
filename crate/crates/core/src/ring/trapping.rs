use num_complex::Complex64;

use super::Ring;

/// Wrapper whose `half` capability panics. Running a computation over
/// `Trapping<R>` proves it never asks for `½`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trapping<R>(pub R);

impl<R: Ring> Ring for Trapping<R> {
    fn zero_like(&self) -> Self {
        Trapping(self.0.zero_like())
    }
    fn one_like(&self) -> Self {
        Trapping(self.0.one_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        Trapping(self.0.add(&rhs.0))
    }
    fn neg(&self) -> Self {
        Trapping(self.0.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Trapping(self.0.mul(&rhs.0))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Trapping(self.0.sub(&rhs.0))
    }
    fn from_int(&self, n: i64) -> Self {
        Trapping(self.0.from_int(n))
    }
    fn half(&self) -> Option<Self> {
        panic!("half requested inside a half-free computation");
    }
    fn try_invert(&self) -> Option<Self> {
        self.0.try_invert().map(Trapping)
    }
    fn norm(&self) -> f64 {
        self.0.norm()
    }
    fn is_exact(&self) -> bool {
        self.0.is_exact()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn embed_complex(&self, c: Complex64) -> Option<Self> {
        self.0.embed_complex(c).map(Trapping)
    }
    fn simplest_within(&self, eps: f64) -> Option<Self> {
        self.0.simplest_within(eps).map(Trapping)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    #[should_panic(expected = "half requested")]
    fn half_traps() {
        let x = Trapping(BigRational::from_integer(3.into()));
        let _ = x.half();
    }

    #[test]
    fn arithmetic_passes_through() {
        let x = Trapping(BigRational::from_integer(3.into()));
        assert_eq!(x.mul(&x).0, BigRational::from_integer(9.into()));
        assert_eq!(x.try_invert().unwrap().0, BigRational::new(1.into(), 3.into()));
    }
}
