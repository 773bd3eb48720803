use formal_spectral::laurent::{integrate_z0, lambda, limit_at_one, series_arith, transform_variable, SeriesOp, Substitution};
use formal_spectral::{LaurentSeries, Ring};
use num_rational::BigRational;
use proptest::prelude::*;

type Q = BigRational;
type S = LaurentSeries<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn zero() -> Q {
    q(0, 1)
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |x| x != &zero())
}

fn finite_series() -> impl Strategy<Value = S> {
    prop::collection::vec((-6i64..=6, rational()), 0..8).prop_map(|cs| LaurentSeries::from_coeffs(&zero(), cs))
}

fn c(x: &Q) -> S {
    LaurentSeries::constant(x.clone())
}

fn z() -> S {
    LaurentSeries::monomial(q(1, 1), 1)
}

fn zi() -> S {
    LaurentSeries::monomial(q(1, 1), -1)
}

fn neg_z() -> S {
    LaurentSeries::monomial(q(-1, 1), 1)
}

fn same(a: &S, b: &S) -> bool {
    a.approx_eq_series(b, 0.0)
}

proptest! {
    #[test]
    fn square_factorization(x in rational()) {
        let lhs = lambda(&[z(), c(&x.mul(&x)), zi()]).unwrap().mul(&z());
        let rhs = lambda(&[z(), c(&x)]).unwrap().mul(&lambda(&[zi(), c(&x)]).unwrap()).mul(&z());
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn negation_and_inversion_substitutions(x in nonzero_rational()) {
        let lhs = lambda(&[z(), c(&x.neg())]).unwrap();
        let rhs = z().mul(&lambda(&[zi(), c(&x)]).unwrap());
        prop_assert!(same(&lhs, &rhs));
        let inv = x.try_invert().unwrap();
        let lhs = c(&x).mul(&lambda(&[z(), c(&inv)]).unwrap());
        let rhs = lambda(&[neg_z(), c(&x)]).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn integral_of_product_is_convolution(a in finite_series(), b in finite_series()) {
        let p = series_arith(SeriesOp::Mul, &a, &b).unwrap();
        let direct = (-12i64..=12).fold(zero(), |acc, s| acc.add(&a.coeff(s).mul(&b.coeff(-s))));
        prop_assert_eq!(integrate_z0(&p), direct);
    }

    #[test]
    fn invert_z_is_involution(a in finite_series()) {
        let b = transform_variable(&transform_variable(&a, Substitution::InvertZ), Substitution::InvertZ);
        prop_assert!(same(&a, &b));
        prop_assert_eq!(a.window(), b.window());
    }

    #[test]
    fn negate_z_is_involution(a in finite_series()) {
        let b = transform_variable(&transform_variable(&a, Substitution::NegateZ), Substitution::NegateZ);
        prop_assert!(same(&a, &b));
    }

    #[test]
    fn limit_integral_exchange(
        rows in prop::collection::vec((-5i64..=5, prop::collection::vec(rational(), 1..5)), 1..6),
        b in finite_series(),
    ) {
        // a(t, z): outer variable z, coefficients polynomial in t.
        let t_zero = LaurentSeries::zero(&zero());
        let a = LaurentSeries::from_coeffs(
            &t_zero,
            rows.into_iter().map(|(s, poly)| {
                let p = LaurentSeries::from_coeffs(&zero(), poly.into_iter().enumerate().map(|(d, v)| (d as i64, v)));
                (s, p)
            }),
        );
        let lim_a = LaurentSeries::from_coeffs(&zero(), a.terms().map(|(s, p)| (s, limit_at_one(p).unwrap())));
        let lhs = integrate_z0(&lim_a.mul(&b));
        let b_lift = LaurentSeries::from_coeffs(&t_zero, b.terms().map(|(s, v)| (s, LaurentSeries::constant(v.clone()))));
        let rhs = limit_at_one(&integrate_z0(&a.mul(&b_lift))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
