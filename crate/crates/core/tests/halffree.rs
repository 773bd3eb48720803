use std::collections::BTreeMap;

use formal_spectral::halffree::{
    fsqrt_nohalf, fsqrt_pencil_expansion, hilbert_product_double, hilbert_product_single, idem_from_fsqrt,
    idem_nohalf, module_action, normal_order_double, normal_order_double_monomials, normal_order_single, Bivariate,
    SpaceTag, SymmetrizedSeries,
};
use formal_spectral::laurent::{integrate_z0, LaurentSeries};
use formal_spectral::ring::{Matrix, Trapping};
use formal_spectral::spectral::{fsqrt_spec, idem_spec, Backend};
use formal_spectral::Ring;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

type Q = BigRational;
type T = Trapping<Q>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn t(n: i64) -> T {
    Trapping(q(n, 1))
}

fn tm(rows: &[&[i64]]) -> Matrix<T> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|v| t(*v)).collect()).collect())
}

/// `f / (z − w)` by synthetic division in `z`; panics if not divisible.
fn divide_by_difference(f: &Bivariate<Q>) -> Bivariate<Q> {
    let mut rest = f.clone();
    let mut g = Bivariate::zero(&q(0, 1));
    let floor = f.terms().map(|((a, _), _)| a).min().unwrap_or(0);
    while let Some(((a, b), c)) = rest.terms().max_by_key(|((a, b), _)| (*a, -*b)).map(|(e, c)| (e, c.clone())) {
        assert!(a > floor - 64, "not divisible by z − w");
        g.add_term((a - 1, b), &c);
        rest.add_term((a, b), &-c.clone());
        rest.add_term((a - 1, b + 1), &c);
    }
    g
}

/// `½(z + w) f / (z − w)` without any ordering.
fn natural_hilbert(f: &Bivariate<Q>) -> Bivariate<Q> {
    let g = divide_by_difference(f);
    let s = Bivariate::from_terms(&q(0, 1), vec![((1, 0), q(1, 2)), ((0, 1), q(1, 2))]);
    s.mul(&g)
}

fn random_bivariate(terms: &[(i64, i64, i64)]) -> Bivariate<Q> {
    Bivariate::from_terms(&q(0, 1), terms.iter().map(|(n, m, c)| ((*n, *m), q(*c, 1))))
}

fn antisymmetrize(a: &Bivariate<Q>) -> Bivariate<Q> {
    let s = a.swapped();
    Bivariate::from_terms(&q(0, 1), a.terms().map(|(e, c)| (e, c.clone())).chain(s.terms().map(|(e, c)| (e, -c.clone()))))
}

fn terms_strategy(max: usize) -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-8i64..=8, -8i64..=8, -9i64..=9), 0..max)
}

#[test]
fn single_ordering_examples() {
    let a = Bivariate::monomial(q(1, 1), 1, 3);
    assert_eq!(normal_order_single(&a), Bivariate::monomial(q(1, 1), 3, 1));
    let a = Bivariate::monomial(q(1, 1), 2, 2);
    assert_eq!(normal_order_single(&a), a);
}

#[test]
fn double_ordering_examples() {
    let a = Bivariate::monomial(q(1, 1), -2, 1);
    let d = normal_order_double_monomials(&a);
    assert_eq!(d.terms().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>(), vec![((2, 1), q(1, 1))]);
    let odd = SymmetrizedSeries::from_ints(SpaceTag::TwoVarAngle, &q(0, 1), &[((2, -1), 3), ((-1, 0), 2)]).unwrap();
    assert!(normal_order_double(&odd).unwrap().is_zero());
    assert!(normal_order_double(&SymmetrizedSeries::zero(SpaceTag::Angle, &q(0, 1))).is_err());
}

#[test]
fn single_product_rejects_bad_input() {
    assert!(hilbert_product_single(&Bivariate::monomial(q(1, 1), 2, 0)).is_err());
    assert!(hilbert_product_single(&Bivariate::monomial(q(1, 1), 2, 2)).is_err());
}

#[test]
fn double_product_rejects_bad_input() {
    let angle = SymmetrizedSeries::from_ints(SpaceTag::TwoVarAngle, &q(0, 1), &[((-1, 0), 1), ((0, -1), -1)]).unwrap();
    assert!(hilbert_product_double(&angle).is_err());
    let lopsided = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &[((-1, 0), 1)]).unwrap();
    assert!(hilbert_product_double(&lopsided).is_err());
    let even = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &[((1, 2), 1), ((2, 1), -1)]).unwrap();
    assert!(hilbert_product_double(&even).is_err());
}

/// Angle-space inputs lead to non-integral coefficients, which is why they
/// are rejected: `c_{1,1}` written with angle elements is half the mixed one.
#[test]
fn angle_space_input_would_not_be_integral() {
    let mixed = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &[((-1, 1), 1), ((1, -1), -1)]).unwrap();
    let angle = SymmetrizedSeries::from_ints(SpaceTag::TwoVarAngle, &q(0, 1), &[((-1, 1), 1), ((1, -1), -1)]).unwrap();
    let m = mixed.to_monomials().unwrap();
    let a = angle.to_monomials().unwrap();
    let da = normal_order_double_monomials(&natural_hilbert(&a));
    assert_eq!(normal_order_double_monomials(&natural_hilbert(&m)), hilbert_product_double(&mixed).unwrap());
    assert!(da.terms().any(|(_, c)| !c.is_integer()));
}

#[test]
fn module_lemma_rewrites() {
    // b = 1 + 3(z+z⁻¹)(w+w⁻¹) + 2[(z²+z⁻²) + (w²+w⁻²)], symmetric and (+,+)
    let b = SymmetrizedSeries::from_ints(
        SpaceTag::TwoVarBracket,
        &q(0, 1),
        &[((0, 0), 1), ((1, 1), 3), ((2, 0), 2), ((0, 2), 2)],
    )
    .unwrap();
    let c10 = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &[((-1, 0), 1), ((0, -1), -1)]).unwrap();
    let c11 = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &[((-1, 1), 1), ((1, -1), -1)]).unwrap();
    let z_cos = SymmetrizedSeries::from_ints(SpaceTag::TwoVarAngle, &q(0, 1), &[((1, 0), 1)]).unwrap();
    let left = normal_order_double(&module_action(&b, &z_cos).unwrap()).unwrap();
    let right = hilbert_product_double(&module_action(&b, &c10).unwrap()).unwrap();
    assert_eq!(left, right);
    // 1 + (zw⁻¹ + wz⁻¹)/2 = 1 + A(1)A(1) − A(−1)A(−1)
    let cross = SymmetrizedSeries::from_ints(
        SpaceTag::TwoVarAngle,
        &q(0, 1),
        &[((0, 0), 1), ((1, 1), 1), ((-1, -1), -1)],
    )
    .unwrap();
    let left = normal_order_double(&module_action(&b, &cross).unwrap()).unwrap();
    let right = hilbert_product_double(&module_action(&b, &c11).unwrap()).unwrap();
    assert_eq!(left, right);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn single_ordering_preserves_double_integral(terms in terms_strategy(12)) {
        let a = random_bivariate(&terms);
        prop_assert_eq!(normal_order_single(&a).double_integral(), a.double_integral());
    }

    #[test]
    fn double_ordering_preserves_double_integral(
        coeffs in prop::collection::vec((-8i64..=8, -8i64..=8, -9i64..=9), 0..12),
        space in prop::sample::select(vec![SpaceTag::TwoVarAngle, SpaceTag::TwoVarMixed, SpaceTag::TwoVarBracket]),
    ) {
        let idx: Vec<_> = coeffs.iter().map(|(j, k, c)| ((*j, *k), *c)).collect();
        let a = SymmetrizedSeries::from_ints(space, &q(0, 1), &idx).unwrap();
        let ordered = normal_order_double(&a).unwrap();
        prop_assert_eq!(ordered.to_monomials().unwrap().double_integral(), a.to_monomials().unwrap().double_integral());
        // ordering the monomial expansion gives the same result
        prop_assert_eq!(normal_order_double_monomials(&a.to_monomials().unwrap()), ordered);
    }

    #[test]
    fn single_product_matches_division(terms in terms_strategy(8)) {
        let a = antisymmetrize(&random_bivariate(&terms));
        let fast = hilbert_product_single(&a).unwrap();
        prop_assert_eq!(&fast, &normal_order_single(&natural_hilbert(&a)));
        prop_assert!(fast.terms().all(|(_, c)| c.is_integer()));
    }

    #[test]
    fn single_vanishing(coeffs in prop::collection::vec((-8i64..=8, -9i64..=9), 0..8)) {
        let mut terms = Vec::new();
        for (n, c) in &coeffs {
            terms.push(((*n, 0), BigInt::from(*c)));
            terms.push(((0, *n), BigInt::from(-c)));
        }
        let a = Bivariate::from_terms(&BigInt::from(0), terms);
        let h = hilbert_product_single(&a).unwrap();
        prop_assert_eq!(h.double_integral(), BigInt::from(0));
    }

    #[test]
    fn double_vanishing(coeffs in prop::collection::vec((1i64..=8, -9i64..=9), 0..8)) {
        // a(z) − a(w) for a = Σ a_k (zᵏ − z⁻ᵏ)/2
        let mut idx = Vec::new();
        for (k, c) in &coeffs {
            idx.push(((-k, 0), *c));
            idx.push(((0, -k), -c));
        }
        let c = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &BigInt::from(0), &idx).unwrap();
        prop_assert_eq!(hilbert_product_double(&c).unwrap().integral(), BigInt::from(0));
    }

    #[test]
    fn ordering_is_compatible_with_symmetric_factors(
        base in prop::collection::vec((-4i64..=4, -4i64..=4, -5i64..=5), 0..8),
        swaps in prop::collection::vec((0i64..=4, 0i64..=4, -5i64..=5), 0..4),
        odd in prop::collection::vec((-4i64..=-1, -4i64..=4, -5i64..=5), 0..4),
        sym in prop::collection::vec((0i64..=3, 0i64..=3, -5i64..=5), 1..5),
    ) {
        let z = q(0, 1);
        let ints = |v: &[(i64, i64, i64)]| v.iter().map(|(j, k, c)| ((*j, *k), *c)).collect::<Vec<_>>();
        let a1 = SymmetrizedSeries::from_ints(SpaceTag::TwoVarAngle, &z, &ints(&base)).unwrap();
        // a2 differs from a1 by terms that double ordering removes
        let mut extra = ints(&odd);
        for (j, k, c) in &swaps {
            extra.push(((*j, *k), *c));
            extra.push(((*k, *j), -c));
        }
        let mut a2 = a1.clone();
        for (i, c) in extra {
            a2.add_term(i, &q(c, 1)).unwrap();
        }
        prop_assert_eq!(normal_order_double(&a1).unwrap(), normal_order_double(&a2).unwrap());
        let mut sb = Vec::new();
        for (j, k, c) in &sym {
            sb.push(((*j, *k), *c));
            if j != k {
                sb.push(((*k, *j), *c));
            }
        }
        let b = SymmetrizedSeries::from_ints(SpaceTag::TwoVarBracket, &z, &sb).unwrap();
        let left = normal_order_double(&module_action(&b, &a1).unwrap()).unwrap();
        let right = normal_order_double(&module_action(&b, &a2).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn idem_of_complement(re in -3.0f64..3.0, im in 0.3f64..2.0) {
        prop_assume!((re - 0.5).abs() >= 0.3);
        let p = Complex64::new(re, im);
        let one = Complex64::new(1.0, 0.0);
        let a = idem_nohalf(&p, 32).unwrap().value;
        let b = idem_nohalf(&(one - p), 32).unwrap().value;
        prop_assert!((a + b - one).norm() < 1e-9);
        let exact = if re > 0.5 { one } else { Complex64::new(0.0, 0.0) };
        prop_assert!((a - exact).norm() < 1e-9);
        if (re - 0.5).abs() > 0.5 {
            let spec = idem_spec(&p, &Backend::quadrature(256)).unwrap().value;
            prop_assert!((a - spec).norm() < 1e-8);
        }
    }

    #[test]
    fn idem_of_complement_exact(n in -20i64..=20, d in 1i64..=7) {
        prop_assume!(2 * n != d);
        let p = Trapping(q(n, d));
        let a = idem_nohalf(&p, 32).unwrap().value;
        let b = idem_nohalf(&Trapping(q(d - n, d)), 32).unwrap().value;
        prop_assert_eq!(a.add(&b), t(1));
    }

    #[test]
    fn fsqrt_agrees_with_spectral(re in -3.0f64..0.2, im in -1.0f64..1.0) {
        let x = Complex64::new(re, im);
        let a = fsqrt_nohalf(&x, 32).unwrap();
        let b = fsqrt_spec(&x, &Backend::quadrature(256)).unwrap().value;
        prop_assert!((a.value - b).norm() < 1e-8);
        prop_assert!(a.residual("fsqrt").unwrap() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn double_product_is_integral_and_matches_division(
        coeffs in prop::collection::vec((1i64..=5, 0i64..=5, -9i64..=9), 1..6),
    ) {
        let mut idx = Vec::new();
        for (n, m, c) in &coeffs {
            idx.push(((-n, *m), *c));
            idx.push(((*m, -n), -c));
        }
        let c = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &q(0, 1), &idx).unwrap();
        let fast = hilbert_product_double(&c).unwrap();
        prop_assert!(fast.terms().all(|(_, x)| x.is_integer()));
        let slow = normal_order_double_monomials(&natural_hilbert(&c.to_monomials().unwrap()));
        prop_assert_eq!(fast, slow);
        // the same computation over plain integers
        let ci = SymmetrizedSeries::from_ints(SpaceTag::TwoVarMixed, &BigInt::from(0), &idx).unwrap();
        prop_assert!(hilbert_product_double(&ci).is_ok());
    }
}

#[test]
fn idem_examples() {
    assert_eq!(idem_nohalf(&t(0), 16).unwrap().value, t(0));
    assert_eq!(idem_nohalf(&t(1), 16).unwrap().value, t(1));
    assert_eq!(idem_nohalf(&t(2), 16).unwrap().value, t(1));
    let p = Matrix::from_rows(vec![
        vec![BigInt::from(1), BigInt::from(1)],
        vec![BigInt::from(0), BigInt::from(0)],
    ]);
    let r = idem_nohalf(&p, 16).unwrap();
    assert_eq!(r.value, p);
    assert_eq!(r.method, "algebraic");
}

#[test]
fn idem_two_sided_exact_matrix() {
    // V·diag(2, −1)·V⁻¹ with V = [[1,2],[0,1]]: idem is V·diag(1,0)·V⁻¹
    let p = tm(&[&[2, -6], &[0, -1]]);
    let r = idem_nohalf(&p, 32).unwrap();
    assert_eq!(r.value, tm(&[&[1, -2], &[0, 0]]));
    assert_eq!(r.method, "fsqrt");
}

#[test]
fn fsqrt_examples() {
    for (x, v) in [(0, 0), (-2, -1), (-6, -2)] {
        assert_eq!(fsqrt_nohalf(&t(x), 32).unwrap().value, t(v));
    }
    let m = tm(&[&[-2, 4], &[0, -6]]);
    let r = fsqrt_nohalf(&m, 32).unwrap();
    // V·diag(−1, −2)·V⁻¹ with V = [[1,−1],[0,1]]
    assert_eq!(r.value, tm(&[&[-1, 1], &[0, -2]]));
    assert!(r.residuals.values().all(|v| *v == 0.0));
}

#[test]
fn pencil_expansion_examples() {
    let s = fsqrt_pencil_expansion(&q(-2, 1), 6).unwrap();
    assert_eq!(s.coeff(0), q(1, 3));
    assert_eq!(s.coeff(1), q(1, 6));
    assert_eq!(s.coeff(-1), q(1, 6));
    let weighted = LaurentSeries::from_coeffs(&q(0, 1), vec![(0, q(1, 1)), (1, q(1, 1))]).mul(&s);
    assert_eq!(integrate_z0(&weighted), q(1, 2));
    // pencil · expansion is 1 away from the truncation edges
    let pencil = LaurentSeries::from_coeffs(&q(0, 1), vec![(-1, q(-2, 1)), (0, q(5, 1)), (1, q(-2, 1))]);
    let prod = pencil.mul(&s);
    for n in -5..=5 {
        assert_eq!(prod.coeff(n), if n == 0 { q(1, 1) } else { q(0, 1) });
    }
    let s = fsqrt_pencil_expansion(&q(0, 1), 4).unwrap();
    assert_eq!(s.terms().map(|(n, c)| (n, c.clone())).collect::<Vec<_>>(), vec![(0, q(1, 1))]);
}

#[test]
fn idem_from_fsqrt_examples() {
    assert_eq!(idem_from_fsqrt(&t(0), 32).unwrap().value, t(0));
    assert_eq!(idem_from_fsqrt(&t(2), 32).unwrap().value, t(1));
    let p = tm(&[&[1, 3], &[0, 0]]);
    let r = idem_from_fsqrt(&p, 32).unwrap();
    assert_eq!(r.value, p);
    assert!(r.residuals.values().all(|v| *v == 0.0));
    assert!(idem_from_fsqrt(&Trapping(q(1, 2)), 32).is_err());
}

#[test]
fn half_free_runs_never_request_half() {
    // every computation above over `Trapping` would panic on a request for ½;
    // this one sweeps a grid of exact inputs on both sides of ½
    let mut seen = BTreeMap::new();
    for n in -6..=6 {
        for d in 1..=3 {
            if 2 * n == d {
                continue;
            }
            let p = Trapping(q(n, d));
            let e = idem_nohalf(&p, 32).unwrap();
            assert!(e.value.0 == q(0, 1) || e.value.0 == q(1, 1));
            *seen.entry(e.method).or_insert(0) += 1;
        }
    }
    assert!(seen.contains_key("series"));
}
