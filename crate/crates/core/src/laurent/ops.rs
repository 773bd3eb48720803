use super::{GrowthClass, LaurentSeries, WeightClass};
use crate::ring::{Ring, SeminormFamily};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `z ↦ −z`
    NegateZ,
    /// `z ↦ z⁻¹`
    InvertZ,
}

/// Sum or product with the module pairing enforced.
pub fn series_arith<R: Ring>(op: SeriesOp, a: &LaurentSeries<R>, b: &LaurentSeries<R>) -> Result<LaurentSeries<R>> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => {
            if !a.is_ring_class() && !b.is_ring_class() {
                return Err(Error::ModulePairing(a.class(), b.class()));
            }
            Ok(a.mul(b))
        }
    }
}

/// `Σ α(n)·p(a_n)` over the stored window.
pub fn weighted_seminorm<R: Ring>(
    a: &LaurentSeries<R>,
    family: &SeminormFamily<R>,
    index: usize,
    alpha: &WeightClass,
) -> Result<f64> {
    let p = family.get(index)?;
    Ok(a.terms().map(|(n, c)| alpha.alpha(n) * p.eval(c)).sum())
}

pub fn integrate_z0<R: Ring>(a: &LaurentSeries<R>) -> R {
    a.coeff(0)
}

/// Double integral of a series in `w` whose coefficients are series in `z`.
pub fn integrate_z0_two_var<R: Ring>(a: &LaurentSeries<LaurentSeries<R>>) -> R {
    integrate_z0(&integrate_z0(a))
}

/// Coefficient sum; defined for summable classes only.
pub fn limit_at_one<R: Ring>(a: &LaurentSeries<R>) -> Result<R> {
    if a.class() > GrowthClass::SummableRing {
        return Err(Error::ClassTooLarge(a.class()));
    }
    Ok(a.terms().fold(a.proto().clone(), |acc, (_, c)| acc.add(c)))
}

pub fn transform_variable<R: Ring>(a: &LaurentSeries<R>, rule: Substitution) -> LaurentSeries<R> {
    let (lo, hi) = a.window();
    let (coeffs, window): (Vec<(i64, R)>, _) = match rule {
        Substitution::NegateZ => (
            a.terms()
                .map(|(n, c)| (n, if n.rem_euclid(2) == 1 { c.neg() } else { c.clone() }))
                .collect(),
            (lo, hi),
        ),
        Substitution::InvertZ => (a.terms().map(|(n, c)| (-n, c.clone())).collect(), (-hi, -lo)),
    };
    let one_sided = match rule {
        Substitution::NegateZ => a.is_one_sided(),
        Substitution::InvertZ => window.0 >= 0,
    };
    let mut out = LaurentSeries::from_coeffs(a.proto(), coeffs)
        .with_class(a.class())
        .with_tail_bound(a.tail_bound());
    out = out.with_window(window.0, window.1).with_one_sided(one_sided);
    out
}

/// `a_n ↦ a_n t^{k·n}`: the result is a series in `z` whose coefficients are
/// series in `t`.
pub fn scale_by_t<R: Ring>(a: &LaurentSeries<R>, k: i64) -> LaurentSeries<LaurentSeries<R>> {
    let zero_t = LaurentSeries::zero(a.proto());
    let (lo, hi) = a.window();
    LaurentSeries::from_coeffs(&zero_t, a.terms().map(|(n, c)| (n, LaurentSeries::monomial(c.clone(), k * n))))
        .with_window(lo, hi)
        .with_class(a.class())
        .with_one_sided(a.is_one_sided())
}

/// Float rings: `p(w^M) ≤ 1e-12·p(1)`.
pub const FLOAT_DECAY_THRESHOLD: f64 = 1e-12;

/// Truncated inverse `Σ_{n=0..M} (−w)^n z^n` of `1 + z·w`.
pub fn invert_unit_pencil<R: Ring>(w: &R, m: usize) -> Result<LaurentSeries<R>> {
    let pw = w.norm();
    if w.is_exact() {
        if !w.is_zero() && pw >= 1.0 {
            return Err(Error::DecayCertificate { norm: pw, threshold: 1.0 });
        }
    } else {
        let tail = w.pow(m as u32).norm();
        let threshold = FLOAT_DECAY_THRESHOLD * w.one_like().norm();
        if tail > threshold {
            return Err(Error::DecayCertificate { norm: tail, threshold });
        }
    }
    let minus_w = w.neg();
    let mut term = w.one_like();
    let mut coeffs = Vec::with_capacity(m + 1);
    for n in 0..=m {
        coeffs.push((n as i64, term.clone()));
        term = term.mul(&minus_w);
    }
    let bound = (pw < 1.0).then(|| pw.powi(m as i32 + 1) / (1.0 - pw));
    Ok(LaurentSeries::from_coeffs(w, coeffs)
        .with_window(0, m as i64)
        .with_class(GrowthClass::RapidRing)
        .with_one_sided(true)
        .with_tail_bound(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn zq() -> BigRational {
        q(0, 1)
    }

    #[test]
    fn product_of_binomials() {
        let a = LaurentSeries::from_ints(&zq(), &[(0, 1), (1, 1)]);
        let b = LaurentSeries::from_ints(&zq(), &[(0, 1), (1, -1)]);
        let p = series_arith(SeriesOp::Mul, &a, &b).unwrap();
        assert!(p.approx_eq_series(&LaurentSeries::from_ints(&zq(), &[(0, 1), (2, -1)]), 0.0));
    }

    #[test]
    fn truncated_geometric_residual() {
        let a = LaurentSeries::from_ints(&zq(), &[(0, 2), (1, -1)]);
        let g = LaurentSeries::from_coeffs(&zq(), (0..=6).map(|n| (n, q(1, 1 << (n + 1)))));
        let p = series_arith(SeriesOp::Mul, &a, &g).unwrap();
        let expected = LaurentSeries::from_coeffs(&zq(), vec![(0, q(1, 1)), (7, q(-1, 128))]);
        assert!(p.approx_eq_series(&expected, 0.0));
    }

    #[test]
    fn module_times_module_rejected() {
        let a = LaurentSeries::from_ints(&zq(), &[(-1, 1), (1, 1)]).with_class(GrowthClass::BoundedModule);
        let err = series_arith(SeriesOp::Mul, &a, &a).unwrap_err();
        assert!(matches!(err, Error::ModulePairing(..)));
        let r = LaurentSeries::from_ints(&zq(), &[(0, 1)]);
        assert!(series_arith(SeriesOp::Mul, &r, &a).is_ok());
    }

    #[test]
    fn weighted_seminorm_examples() {
        let fam = SeminormFamily::<BigRational>::standard();
        let a = LaurentSeries::from_ints(&zq(), &[(0, 3)]);
        assert_eq!(weighted_seminorm(&a, &fam, 0, &WeightClass::Ones).unwrap(), 3.0);
        let b = LaurentSeries::from_ints(&zq(), &[(-1, 1), (1, 1)]);
        assert_eq!(weighted_seminorm(&b, &fam, 0, &WeightClass::Polynomial(1)).unwrap(), 4.0);
        assert_eq!(weighted_seminorm(&LaurentSeries::zero(&zq()), &fam, 0, &WeightClass::Ones).unwrap(), 0.0);
    }

    #[test]
    fn integrals() {
        let a = LaurentSeries::from_ints(&zq(), &[(0, 5), (1, 2), (-1, -1)]);
        assert_eq!(integrate_z0(&a), q(5, 1));
        let hilbert = LaurentSeries::from_coeffs(&zq(), (-8..=8).map(|s: i64| (s, q(s.signum(), 1))));
        assert_eq!(integrate_z0(&hilbert), q(0, 1));
        let t = q(1, 3);
        let poisson = LaurentSeries::from_coeffs(&zq(), (-8i64..=8).map(|s| (s, Ring::pow(&t, s.unsigned_abs() as u32))));
        assert_eq!(integrate_z0(&poisson), q(1, 1));
    }

    #[test]
    fn limits() {
        let a = LaurentSeries::from_ints(&zq(), &[(0, 1), (1, -1)]);
        assert_eq!(limit_at_one(&a).unwrap(), q(0, 1));
        let g = LaurentSeries::from_coeffs(&zq(), (0..=4).map(|n| (n, q(1, 1 << n))));
        assert_eq!(limit_at_one(&g).unwrap(), q(31, 16));
        let big = a.with_class(GrowthClass::PolyModule);
        assert!(matches!(limit_at_one(&big), Err(Error::ClassTooLarge(_))));
    }

    #[test]
    fn substitutions() {
        let a = LaurentSeries::from_ints(&zq(), &[(0, 1), (1, 2)]);
        let b = transform_variable(&a, Substitution::InvertZ);
        assert_eq!(b.coeff(-1), q(2, 1));
        assert_eq!(b.window(), (-1, 0));
        let hilbert = LaurentSeries::from_coeffs(&zq(), (-4..=4).map(|s: i64| (s, q(s.signum(), 1))));
        let h = transform_variable(&hilbert, Substitution::NegateZ);
        assert_eq!(h.coeff(1), q(-1, 1));
        assert_eq!(h.coeff(2), q(1, 1));
        assert_eq!(h.coeff(-1), q(1, 1));
    }

    #[test]
    fn t_scaling() {
        let a = LaurentSeries::from_ints(&zq(), &[(-1, 3), (2, 1)]);
        let s = scale_by_t(&a, 2);
        assert_eq!(s.coeff(-1).coeff(-2), q(3, 1));
        assert_eq!(s.coeff(2).coeff(4), q(1, 1));
    }

    #[test]
    fn pencil_inversion() {
        let one = invert_unit_pencil(&zq(), 5).unwrap();
        assert!(one.approx_eq_series(&LaurentSeries::from_ints(&zq(), &[(0, 1)]), 0.0));
        let g = invert_unit_pencil(&q(-1, 2), 3).unwrap();
        let expected = LaurentSeries::from_coeffs(&zq(), (0..=3).map(|n| (n, q(1, 1 << n))));
        assert!(g.approx_eq_series(&expected, 0.0));
        assert!(g.is_one_sided());
        assert!((g.tail_bound().unwrap() - 0.125).abs() < 1e-15);
        assert!(matches!(invert_unit_pencil(&q(3, 2), 8), Err(Error::DecayCertificate { .. })));
    }

    #[test]
    fn float_pencil_certificate() {
        use num_complex::Complex64;
        assert!(invert_unit_pencil(&Complex64::new(0.3, 0.0), 64).is_ok());
        assert!(invert_unit_pencil(&Complex64::new(0.9, 0.0), 16).is_err());
    }
}
