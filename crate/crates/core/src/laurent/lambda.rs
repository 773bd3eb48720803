use crate::ring::Ring;
use crate::{Error, Result};

/// Sign `Π_{j<n} (−1)^{ε_j ε_{j+1}}` for every pattern `ε ∈ {0,1}^n`, with
/// patterns enumerated so that bit `k` of the index is `ε_k`.
pub fn lambda_signs(n: usize) -> Vec<(Vec<bool>, i8)> {
    assert!(n < 20, "too many arguments");
    (0..1usize << n)
        .map(|mask| {
            let eps: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            let flips = eps.windows(2).filter(|w| w[0] && w[1]).count();
            (eps, if flips % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// The Λ-combinator. Factors are multiplied in argument order, so
/// non-commuting arguments give the ordered expansion.
pub fn lambda<R: Ring>(args: &[R]) -> Result<R> {
    let proto = args.first().ok_or_else(|| Error::InvalidInput("Λ needs at least one argument".into()))?;
    let half = proto.half().ok_or(Error::MissingHalf)?;
    let mut acc = proto.zero_like();
    for (eps, sign) in lambda_signs(args.len()) {
        let mut term = proto.one_like();
        for (c, &on) in args.iter().zip(&eps) {
            if on {
                term = term.mul(c);
            }
        }
        acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc.mul(&half.pow(args.len().div_ceil(2) as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_cases() {
        assert_eq!(lambda(&[q(3)]).unwrap(), q(2));
        assert_eq!(lambda(&[q(3), q(5)]).unwrap(), q(-3));
    }

    #[test]
    fn three_argument_expansion_over_noncommuting_matrices() {
        let m = |a: i64, b: i64, c: i64, d: i64| Matrix::from_rows(vec![vec![q(a), q(b)], vec![q(c), q(d)]]);
        let (a, b, c) = (m(1, 2, 0, 1), m(0, 1, 1, 0), m(2, 0, 1, 3));
        let one = a.one_like();
        let expected = one
            .add(&a)
            .add(&b)
            .add(&c)
            .sub(&a.mul(&b))
            .add(&a.mul(&c))
            .sub(&b.mul(&c))
            .add(&a.mul(&b).mul(&c))
            .mul(&Matrix::scalar(2, BigRational::new(1.into(), 4.into())));
        assert_eq!(lambda(&[a, b, c]).unwrap(), expected);
    }

    #[test]
    fn missing_half() {
        assert_eq!(lambda(&[BigInt::from(3)]), Err(Error::MissingHalf));
    }

    #[test]
    fn sign_table_size() {
        let t = lambda_signs(4);
        assert_eq!(t.len(), 16);
        assert_eq!(t.iter().filter(|(_, s)| *s < 0).count(), 6);
    }
}
