use super::Ring;
use crate::{Error, Result};

/// `q ↦ (1−q)(1+q)⁻¹`. Exchanges the left-half-plane-avoiding class with the
/// class avoiding the complement of the open unit disk. Uses no `½`.
pub fn cayley<R: Ring>(q: &R) -> Result<R> {
    let one = q.one_like();
    let inv = one.add(q).try_invert().ok_or_else(|| {
        Error::NotInvertible("1+q (pencil 1+zW singular at z=-1)".into())
    })?;
    Ok(one.sub(q).mul(&inv))
}

/// The Cayley map is an involution, so its inverse is itself.
pub fn cayley_inv<R: Ring>(w: &R) -> Result<R> {
    cayley(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scalar_values() {
        assert_eq!(cayley(&q(3, 1)).unwrap(), q(-1, 2));
        assert_eq!(cayley(&q(1, 1)).unwrap(), q(0, 1));
        assert_eq!(cayley_inv(&q(0, 1)).unwrap(), q(1, 1));
        assert!(matches!(cayley(&q(-1, 1)), Err(Error::NotInvertible(_))));
    }

    proptest! {
        #[test]
        fn exact_roundtrip(n in -50i64..50, d in 1i64..20) {
            let x = q(n, d);
            prop_assume!(x != q(-1, 1));
            let w = cayley(&x).unwrap();
            prop_assert_eq!(cayley_inv(&w).unwrap(), x);
        }

        #[test]
        fn matrix_float_roundtrip(e in proptest::collection::vec(-2.0f64..2.0, 4)) {
            let c = |v: f64| Complex64::new(v, 0.0);
            let m = Matrix::from_rows(vec![vec![c(e[0] + 3.0), c(e[1])], vec![c(e[2]), c(e[3] + 3.0)]]);
            let back = cayley_inv(&cayley(&m).unwrap()).unwrap();
            prop_assert!(back.dist(&m) < 1e-12);
        }
    }
}
