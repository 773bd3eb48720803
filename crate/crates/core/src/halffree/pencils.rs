use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::laurent::{integrate_z0, GrowthClass, LaurentSeries, FLOAT_DECAY_THRESHOLD};
use crate::ring::{Ring, DEFAULT_TOLERANCE};
use crate::spectral::quadrature::node_mean;
use crate::spectral::series_backend::one_sided_inverse;
use crate::spectral::{ClassMode, Summation};
use crate::{Error, Result};

/// Relative gap between the `M` and `2M` finite-section values accepted as
/// converged.
pub const SECTION_TOLERANCE: f64 = 1e-9;

/// Largest quadrature rule tried before reporting non-convergence.
pub const MAX_NODES: usize = 1 << 14;

/// Minimum finite-section half-width.
pub const MIN_SECTION: usize = 32;

#[derive(Clone, Debug)]
pub struct HalfFreeResult<R> {
    pub value: R,
    pub method: &'static str,
    pub error_budget: f64,
    pub residuals: BTreeMap<String, f64>,
}

impl<R> HalfFreeResult<R> {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.get(name).copied()
    }
}

fn is_null<R: Ring>(x: &R) -> bool {
    if x.is_exact() {
        x.is_zero()
    } else {
        x.norm() <= DEFAULT_TOLERANCE
    }
}

fn invert<R: Ring>(x: &R, what: &str) -> Result<R> {
    x.try_invert().ok_or_else(|| Error::NotInvertible(what.into()))
}

/// Coefficients `c_{−m..m}` of the finite-section right inverse of
/// `π₋₁z⁻¹ + π₀ + π₁z`: `π₁c_{n−1} + π₀c_n + π₋₁c_{n+1} = δ_{n0}` on `|n| ≤ m`.
fn finite_section<R: Ring>(pm1: &R, p0: &R, p1: &R, m: usize) -> Result<Vec<R>> {
    let len = 2 * m + 1;
    let one = p0.one_like();
    let mut diag_inv = Vec::with_capacity(len);
    let mut rhs = Vec::with_capacity(len);
    let mut d = p0.clone();
    let mut y = if m == 0 { one.clone() } else { one.zero_like() };
    for i in 0..len {
        if i > 0 {
            let l = p1.mul(&diag_inv[i - 1]);
            d = p0.sub(&l.mul(pm1));
            let di = if i == m { one.clone() } else { one.zero_like() };
            y = di.sub(&l.mul(&rhs[i - 1]));
        }
        diag_inv.push(invert(&d, "finite-section pivot")?);
        rhs.push(y.clone());
    }
    let mut x = vec![one.zero_like(); len];
    x[len - 1] = diag_inv[len - 1].mul(&rhs[len - 1]);
    for i in (0..len - 1).rev() {
        x[i] = diag_inv[i].mul(&rhs[i].sub(&pm1.mul(&x[i + 1])));
    }
    Ok(x)
}

/// `∫ (1+z)t / (1 + (z − 2 + z⁻¹)t)` from a finite section of half-width `m`.
fn fsqrt_section<R: Ring>(t: &R, m: usize) -> Result<R> {
    let one = t.one_like();
    let two_t = t.add(t);
    let c = finite_section(t, &one.sub(&two_t), t, m)?;
    Ok(t.mul(&c[m].add(&c[m - 1])))
}

fn fsqrt_residuals<R: Ring>(t: &R, x: &R) -> BTreeMap<String, f64> {
    let one = t.one_like();
    let mut r = BTreeMap::new();
    r.insert("fsqrt".into(), x.mul(&one.sub(x)).dist(t));
    r.insert("commutator".into(), x.mul(t).dist(&t.mul(x)));
    let s = one.sub(&x.add(x));
    let four_t = t.add(t).add(&t.add(t));
    r.insert("square".into(), s.mul(&s).dist(&one.sub(&four_t)));
    r
}

/// `ᶠ√t` without `½`: finite sections of the symmetric pencil at half-widths
/// `M` and `2M`; exact rings then try rational reconstruction, accepted only
/// if `x(1−x) = t` holds exactly.
pub fn fsqrt_nohalf<R: Ring>(t: &R, window: usize) -> Result<HalfFreeResult<R>> {
    let m = window.max(MIN_SECTION);
    let coarse = fsqrt_section(t, m)?;
    let fine = fsqrt_section(t, 2 * m)?;
    let gap = coarse.dist(&fine);
    let tolerance = SECTION_TOLERANCE * (1.0 + fine.norm());
    if !(gap <= tolerance) {
        return Err(Error::NonConvergence { budget: gap, tolerance });
    }
    if t.is_exact() {
        if let Some(x) = fine.simplest_within(gap.max(1e-15)) {
            let residuals = fsqrt_residuals(t, &x);
            if residuals.values().all(|v| *v == 0.0) {
                return Ok(HalfFreeResult {
                    value: x,
                    method: "finite-section+reconstruction",
                    error_budget: 0.0,
                    residuals,
                });
            }
        }
    }
    let residuals = fsqrt_residuals(t, &fine);
    Ok(HalfFreeResult {
        value: fine,
        method: "finite-section",
        error_budget: gap + DEFAULT_TOLERANCE,
        residuals,
    })
}

fn idem_residuals<R: Ring>(p: &R, e: &R) -> BTreeMap<String, f64> {
    let mut r = BTreeMap::new();
    r.insert("idempotent".into(), e.mul(e).dist(e));
    r.insert("commutator".into(), e.mul(p).dist(&p.mul(e)));
    r
}

/// `idem p = ∫ pz((1−p) + pz)⁻¹` without `½`. Tries, in order: idempotent
/// input (exact inverse `(1−p) + pz⁻¹`), a one-sided series, quadrature for
/// rings embedded in complex matrices, and the route through `ᶠ√(p(1−p))`.
pub fn idem_nohalf<R: Ring>(p: &R, window: usize) -> Result<HalfFreeResult<R>> {
    let one = p.one_like();
    let a0 = one.sub(p);
    let numerator = LaurentSeries::monomial(p.clone(), 1);
    let done = |value: R, method, error_budget| {
        let residuals = idem_residuals(p, &value);
        Ok(HalfFreeResult {
            value,
            method,
            error_budget,
            residuals,
        })
    };

    if is_null(&p.mul(p).sub(p)) {
        let inv = LaurentSeries::from_coeffs(p, vec![(0, a0.clone()), (-1, p.clone())]);
        return done(integrate_z0(&numerator.mul(&inv)), "algebraic", 0.0);
    }
    let order = window.max(MIN_SECTION);
    // Exact rings give a finite z⁰ coefficient at any order; float rings
    // retry at longer orders until the decay certificate passes.
    let orders: &[usize] = if p.is_exact() { &[1] } else { &[1, 4, 16] };
    for k in orders {
        if let Ok(inv) = one_sided_inverse(&a0, p, order * k) {
            let budget = inv.tail_bound().unwrap_or(0.0) * p.norm();
            return done(integrate_z0(&numerator.mul(&inv)), "series", budget);
        }
    }
    if p.embed_complex(Complex64::new(1.0, 0.0)).is_some() {
        let pencil = vec![(0, a0), (1, p.clone())];
        let num = vec![(1, p.clone())];
        let mut nodes = (2 * order).next_power_of_two().max(64);
        loop {
            let q = node_mean(&pencil, &num, nodes, Summation::Sequential, ClassMode::Certify)?;
            let tolerance = FLOAT_DECAY_THRESHOLD * (1.0 + q.value.norm());
            if q.alias_estimate <= tolerance {
                return done(q.value, "quadrature", q.alias_estimate + DEFAULT_TOLERANCE);
            }
            if nodes >= MAX_NODES {
                return Err(Error::NonConvergence {
                    budget: q.alias_estimate,
                    tolerance,
                });
            }
            nodes *= 2;
        }
    }
    let r = idem_from_fsqrt(p, window)?;
    done(r.value, "fsqrt", r.error_budget)
}

/// `(ᶠ√(p(1−p)) − p)(1 − 2p)⁻¹`.
pub fn idem_from_fsqrt<R: Ring>(p: &R, window: usize) -> Result<HalfFreeResult<R>> {
    let one = p.one_like();
    let q = p.mul(&one.sub(p));
    let gap = one.sub(&p.add(p));
    let gap_inv = invert(&gap, "1 − 2p")?;
    let root = fsqrt_nohalf(&q, window)?;
    let e = root.value.sub(p).mul(&gap_inv);
    let mut residuals = idem_residuals(p, &e);
    let two_pe = p.mul(&e).add(&p.mul(&e));
    residuals.insert("decomposition".into(), root.value.dist(&p.add(&e).sub(&two_pe)));
    // 1 + (z − 2 + z⁻¹)p(1−p) = (1 − p + pz)(1 − p + pz⁻¹)
    let left = LaurentSeries::from_coeffs(p, vec![(-1, q.clone()), (0, one.sub(&q.add(&q))), (1, q.clone())]);
    let right = LaurentSeries::from_coeffs(p, vec![(0, one.sub(p)), (1, p.clone())])
        .mul(&LaurentSeries::from_coeffs(p, vec![(0, one.sub(p)), (-1, p.clone())]));
    let defect = left.sub(&right).norm();
    residuals.insert("factorization".into(), defect);
    Ok(HalfFreeResult {
        value: e,
        method: root.method,
        error_budget: root.error_budget * gap_inv.norm(),
        residuals,
    })
}

/// `(1 + (z − 2 + z⁻¹)t)⁻¹ = (1−2x)⁻¹ Σ (−x(1−x)⁻¹)^{|n|} zⁿ` on `|n| ≤ window`,
/// with `x = ᶠ√t`.
pub fn fsqrt_pencil_expansion<R: Ring>(t: &R, window: usize) -> Result<LaurentSeries<R>> {
    let x = fsqrt_nohalf(t, window)?.value;
    let one = t.one_like();
    let lead = invert(&one.sub(&x.add(&x)), "1 − 2ᶠ√t")?;
    let ratio = x.neg().mul(&invert(&one.sub(&x), "1 − ᶠ√t")?);
    let m = window as i64;
    let mut coeffs = Vec::new();
    let mut c = lead;
    for n in 0..=m {
        coeffs.push((n, c.clone()));
        if n > 0 {
            coeffs.push((-n, c.clone()));
        }
        c = c.mul(&ratio);
    }
    Ok(LaurentSeries::from_coeffs(t, coeffs)
        .with_window(-m, m)
        .with_class(GrowthClass::RapidRing))
}
