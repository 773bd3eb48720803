use std::collections::BTreeMap;

use num_rational::BigRational;

use super::quadrature::{check_nodes, guarded_inverse, node, scalar_like, with_alias_estimate};
use super::series_backend::z_side_inverse;
use super::{half_of, invert, sqrt_spec, Backend, ClassMode, SpectralResult, Summation};
use crate::kernels::{kernel_coefficients, KernelKind};
use crate::laurent::{transform_variable, LaurentSeries, Substitution};
use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyKind {
    K,
    H,
    L,
    G,
}

fn ratio<R: Ring>(proto: &R, t: &BigRational) -> Result<R> {
    proto
        .from_ratio(t)
        .ok_or_else(|| Error::InvalidInput(format!("{t} is not representable in the ring")))
}

/// One of the homotopies `K, H, L, G` as a series in `z` on `|n| ≤ m`, from
/// `q` and its sign `f`.
pub fn homotopy_eval<R: Ring>(kind: HomotopyKind, t: &BigRational, q: &R, f: &R, m: usize) -> Result<LaurentSeries<R>> {
    let h = half_of(q)?;
    let one = q.one_like();
    let tt = ratio(q, t)?;
    let r = q.mul(f);
    let plus = h.mul(&one.add(f));
    let minus = h.mul(&one.sub(f));
    let a0 = h.mul(&one.add(&r));
    let a1 = tt.mul(&h.mul(&one.sub(&r)));
    // Λ(tz, R) = a0 + a1 z and z·Λ(tz⁻¹, R) = a1 + a0 z
    let lam_tz = LaurentSeries::from_coeffs(q, vec![(0, a0.clone()), (1, a1.clone())]);
    let z_lam_tzi = LaurentSeries::from_coeffs(q, vec![(0, a1.clone()), (1, a0.clone())]);
    let lam_t = a0.add(&a1);
    let out = match kind {
        HomotopyKind::L | HomotopyKind::K => {
            let l = lam_tz.scale_left(&plus).add(&z_lam_tzi.scale_left(&minus));
            if kind == HomotopyKind::L {
                l
            } else {
                l.scale_right(&invert(&lam_t, "Λ(t, |Q|_r)")?)
            }
        }
        HomotopyKind::G | HomotopyKind::H => {
            let inv = z_side_inverse(&a0, &a1, m)?;
            let mirrored = transform_variable(&inv, Substitution::InvertZ).mul(&LaurentSeries::monomial(one.clone(), -1));
            let g = inv.scale_left(&plus).add(&mirrored.scale_left(&minus));
            if kind == HomotopyKind::G {
                g
            } else {
                g.scale_left(&lam_t)
            }
        }
    };
    let m = m as i64;
    let coeffs: Vec<(i64, R)> = out
        .terms()
        .filter(|(n, _)| n.abs() <= m)
        .map(|(n, c)| (n, c.clone()))
        .collect();
    Ok(LaurentSeries::from_coeffs(q, coeffs)
        .with_window(-m, m)
        .with_class(out.class())
        .with_tail_bound(out.tail_bound()))
}

/// `(C(t,s), √C(t,s))` from a square root of `s`.
pub fn contraction_with_root<R: Ring>(t: &BigRational, sqrt_s: &R) -> Result<(R, R)> {
    let one = sqrt_s.one_like();
    let rho = sqrt_s.sub(&one).mul(&invert(&sqrt_s.add(&one), "√s + 1")?);
    let u = ratio(sqrt_s, t)?.mul(&rho);
    let root_c = one.add(&u).mul(&invert(&one.sub(&u), "1 − tρ")?);
    Ok((root_c.mul(&root_c), root_c))
}

/// Contraction path of `s` to `1`; the square root comes from the backend.
pub fn contraction_eval<R: Ring>(t: &BigRational, s: &R, backend: &Backend<R>) -> Result<(R, R)> {
    let root = sqrt_spec(s, backend)?.value;
    contraction_with_root(t, &root)
}

/// Checks, on `|n| ≤ m−1`, that `1/Λ(w, C, w⁻¹)` has coefficients
/// `√C⁻¹(tρ)^{|n|}` and that the same series arises from the Poisson
/// transform of `1/Λ(zw, S, (zw)⁻¹)` scaled by `√S·√C⁻¹`.
pub fn contraction_poisson_check<R: Ring>(t: &BigRational, sqrt_s: &R, m: usize, tol: f64) -> Result<bool> {
    let one = sqrt_s.one_like();
    let h = half_of(sqrt_s)?;
    let quarter = h.mul(&h);
    let (c, root_c) = contraction_with_root(t, sqrt_s)?;
    let rho = sqrt_s.sub(&one).mul(&invert(&sqrt_s.add(&one), "√s + 1")?);
    let u = ratio(sqrt_s, t)?.mul(&rho);
    let mi = m as i64;
    let geometric = |lead: R, step: &R| {
        let mut out = Vec::new();
        let mut p = lead;
        for n in 0..=mi {
            out.push((n, p.clone()));
            if n > 0 {
                out.push((-n, p.clone()));
            }
            p = p.mul(step);
        }
        LaurentSeries::from_coeffs(sqrt_s, out)
    };
    let candidate = geometric(invert(&root_c, "√C")?, &u);

    let pencil = |x: &R| {
        let side = quarter.mul(&one.sub(x));
        LaurentSeries::from_coeffs(sqrt_s, vec![(-1, side.clone()), (0, h.mul(&one.add(x))), (1, side)])
    };
    let inner = |a: &LaurentSeries<R>| {
        let ok = |n: i64| n.abs() < mi;
        (-mi..=mi).filter(|n| ok(*n)).all(|n| {
            let expected = if n == 0 { one.clone() } else { one.zero_like() };
            a.coeff(n).approx_eq(&expected, tol)
        })
    };
    if !inner(&pencil(&c).mul(&candidate)) {
        return Ok(false);
    }

    // Poisson route: b_n = √S⁻¹ρ^{|n|} are the coefficients of 1/Λ(u,S,u⁻¹).
    let s = sqrt_s.mul(sqrt_s);
    let b = geometric(invert(sqrt_s, "√s")?, &rho);
    if !inner(&pencil(&s).mul(&b)) {
        return Ok(false);
    }
    let poisson = kernel_coefficients(KernelKind::Poisson, m as u32, mi);
    let tt = ratio(sqrt_s, t)?;
    let scale = sqrt_s.mul(&invert(&root_c, "√C")?);
    // ∫ 𝒫(t,z) Σ b_n (zw)^n picks s = −n from the kernel.
    let mut routed = Vec::new();
    for n in -mi..=mi {
        let mut kt = one.zero_like();
        for ((d, s_exp), k) in poisson.entries() {
            if s_exp == -n {
                kt = kt.add(&ratio(sqrt_s, k)?.mul(&tt.pow(d as u32)));
            }
        }
        routed.push((n, scale.mul(&kt).mul(&b.coeff(n))));
    }
    let routed = LaurentSeries::from_coeffs(sqrt_s, routed);
    Ok((-mi..=mi).all(|n| routed.coeff(n).approx_eq(&candidate.coeff(n), tol)))
}

/// `∫ (z⁻¹(((1+z)/2)²a⁻¹ − ((1−z)/2)²b⁻¹))⁻¹` on the quadrature backend.
pub fn geometric_mean<R: Ring>(a: &R, b: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    let (n, summation) = match backend {
        Backend::Quadrature { nodes, summation } => (*nodes, *summation),
        other => {
            return Err(Error::UnsupportedBackend {
                backend: other.name(),
                what: "geometric mean".into(),
            })
        }
    };
    let one_run = |a: &R, b: &R| -> Result<(R, f64, f64)> {
        let h = half_of(a)?;
        let ai = invert(a, "a")?;
        let bi = invert(b, "b")?;
        let side = h.mul(&h).mul(&ai.sub(&bi));
        let pencil = vec![(-1, side.clone()), (0, h.mul(&ai.add(&bi))), (1, side)];
        let numerator = vec![(0, a.one_like())];
        let q = super::quadrature::node_mean(&pencil, &numerator, n, summation, ClassMode::Certify)?;
        Ok((q.value, q.alias_estimate, q.margin))
    };
    let (value, alias, margin) = one_run(a, b)?;
    let (swapped, _, _) = one_run(b, a)?;
    let mut residuals = BTreeMap::new();
    residuals.insert("symmetry".into(), value.dist(&swapped));
    residuals.insert("riccati".into(), value.mul(&invert(a, "a")?).mul(&value).dist(b));
    Ok(SpectralResult {
        value,
        residuals,
        error_budget: alias + crate::ring::DEFAULT_TOLERANCE,
        backend: "quadrature",
        unverified_class: false,
        margin: Some(margin),
    })
}

/// `√s` from the equal-weight rule at `t_k = cos(2πk/N)` applied to
/// `s((1+t)/2 + (1−t)/2·s)⁻¹`.
pub fn sqrt_real_segment<R: Ring>(s: &R, n: usize, summation: Summation) -> Result<SpectralResult<R>> {
    check_nodes(n)?;
    let h = half_of(s)?;
    let one = s.one_like();
    let mut values = Vec::with_capacity(n);
    let mut margin = f64::INFINITY;
    for k in 0..n {
        let t = node(k, n).re;
        let tc = scalar_like(s, num_complex::Complex64::new(t, 0.0))?;
        let p = h.mul(&one.add(&tc)).add(&h.mul(&one.sub(&tc)).mul(s));
        let (inv, m) = guarded_inverse(&p, ClassMode::Certify, &format!("segment node {k}/{n}"))?;
        margin = margin.min(m);
        values.push(s.mul(&inv));
    }
    let (value, alias) = with_alias_estimate(&values, summation)?;
    let mut residuals = BTreeMap::new();
    residuals.insert("square".into(), value.mul(&value).dist(s));
    residuals.insert("commutator".into(), value.mul(s).dist(&s.mul(&value)));
    Ok(SpectralResult {
        value,
        residuals,
        error_budget: alias + crate::ring::DEFAULT_TOLERANCE,
        backend: "segment",
        unverified_class: false,
        margin: Some(margin),
    })
}
