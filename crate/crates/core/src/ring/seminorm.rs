use std::fmt;
use std::sync::Arc;

use super::Ring;
use crate::{Error, Result};

/// One map `element -> [0, ∞)` together with the index of its companion
/// `p̃`, which must satisfy `p(XY) ≤ p̃(X)·p̃(Y)`.
#[derive(Clone)]
pub struct Seminorm<R> {
    pub name: String,
    pub companion: usize,
    eval: Arc<dyn Fn(&R) -> f64 + Send + Sync>,
}

impl<R> Seminorm<R> {
    pub fn new(name: impl Into<String>, companion: usize, f: impl Fn(&R) -> f64 + Send + Sync + 'static) -> Self {
        Seminorm {
            name: name.into(),
            companion,
            eval: Arc::new(f),
        }
    }

    pub fn eval(&self, x: &R) -> f64 {
        (self.eval)(x)
    }
}

impl<R> fmt::Debug for Seminorm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seminorm")
            .field("name", &self.name)
            .field("companion", &self.companion)
            .finish()
    }
}

/// Finite indexed family of seminorms.
#[derive(Clone, Debug)]
pub struct SeminormFamily<R> {
    members: Vec<Seminorm<R>>,
}

impl<R: Ring> SeminormFamily<R> {
    /// The shipped family: the ring's own norm (modulus, absolute value or
    /// max-row-sum), which is submultiplicative and so its own companion.
    pub fn standard() -> Self {
        SeminormFamily {
            members: vec![Seminorm::new("default", 0, |x: &R| x.norm())],
        }
    }

    pub fn new(members: Vec<Seminorm<R>>) -> Result<Self> {
        for m in &members {
            if m.companion >= members.len() {
                return Err(Error::UnknownSeminorm(m.companion));
            }
        }
        Ok(SeminormFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<&Seminorm<R>> {
        self.members.get(index).ok_or(Error::UnknownSeminorm(index))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Seminorm<R>)> {
        self.members.iter().enumerate()
    }
}

pub fn seminorm_eval<R: Ring>(family: &SeminormFamily<R>, index: usize, x: &R) -> Result<f64> {
    Ok(family.get(index)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;
    use num_complex::Complex64;
    use num_rational::BigRational;

    #[test]
    fn standard_family_values() {
        let c = SeminormFamily::<Complex64>::standard();
        assert_eq!(seminorm_eval(&c, 0, &Complex64::new(3.0, -4.0)).unwrap(), 5.0);

        let q = SeminormFamily::<BigRational>::standard();
        let x = BigRational::new((-7).into(), 2.into());
        assert_eq!(seminorm_eval(&q, 0, &x).unwrap(), 3.5);

        let m = SeminormFamily::<Matrix<BigRational>>::standard();
        let z = Matrix::identity(3, &x).zero_like();
        assert_eq!(seminorm_eval(&m, 0, &z).unwrap(), 0.0);
    }

    #[test]
    fn unknown_index() {
        let q = SeminormFamily::<BigRational>::standard();
        let x = BigRational::from_integer(1.into());
        assert_eq!(seminorm_eval(&q, 3, &x), Err(Error::UnknownSeminorm(3)));
    }

    #[test]
    fn companion_must_exist() {
        let bad = Seminorm::new("p", 2, |x: &BigRational| x.norm());
        assert!(SeminormFamily::new(vec![bad]).is_err());
    }
}
