use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{half_of, invert, spectral_integral, Backend, ClassMode, SpectralFn, SpectralResult};
use crate::laurent::{GrowthClass, LaurentSeries};
use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    AbsR,
    PertR,
    AbsI,
    Pol,
    AbsF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionVariant {
    /// Coefficients of `Λ(z,x)⁻¹`.
    PencilSignA,
    /// Coefficients of `Λ(−z,x)Λ(z,x)⁻¹`.
    PencilSignB,
    /// Coefficients of `Λ(z,x,z⁻¹)⁻¹`.
    PencilSqrt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    InvOnePlusAbsR,
    InvOnePlusSqrt,
}

/// Re-target oracle eigen-data at `g(x)` for a polynomial map `g`.
fn mapped<R: Ring>(backend: &Backend<R>, g: impl Fn(Complex64) -> Complex64) -> Backend<R> {
    match backend {
        Backend::Oracle { v, eigenvalues } => Backend::Oracle {
            v: v.clone(),
            eigenvalues: eigenvalues.iter().map(|l| g(*l)).collect(),
        },
        other => other.clone(),
    }
}

fn run<R: Ring>(f: SpectralFn, x: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    spectral_integral(f, x, backend, ClassMode::Certify)
}

fn finish<R: Ring>(
    value: R,
    residuals: BTreeMap<String, f64>,
    budget: f64,
    inner: &SpectralResult<R>,
) -> SpectralResult<R> {
    SpectralResult {
        value,
        residuals,
        error_budget: budget,
        backend: inner.backend,
        unverified_class: inner.unverified_class,
        margin: inner.margin,
    }
}

pub fn derived_decomposition<R: Ring>(kind: DecompositionKind, x: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    let one = x.one_like();
    let mut res = BTreeMap::new();
    match kind {
        DecompositionKind::AbsR | DecompositionKind::PertR => {
            let f = run(SpectralFn::Sgn, x, backend)?;
            let abs = x.mul(&f.value);
            let budget = f.error_budget * x.norm();
            res.insert("decomposition".into(), abs.mul(&f.value).dist(x));
            if kind == DecompositionKind::AbsR {
                return Ok(finish(abs, res, budget, &f));
            }
            let pert = abs.sub(&one).mul(&invert(&abs.add(&one), "1 + |x|_r")?);
            if let Ok(integral) = run(SpectralFn::PertR, x, backend) {
                res.insert("integral_mismatch".into(), integral.value.dist(&pert));
            }
            Ok(finish(pert, res, budget, &f))
        }
        DecompositionKind::AbsI | DecompositionKind::Pol => {
            let neg_sq = x.mul(x).neg();
            let root = run(SpectralFn::Sqrt, &neg_sq, &mapped(backend, |l| -l * l))?;
            let abs_i = root.value.clone();
            let pol = x.mul(&invert(&abs_i, "|x|_i")?);
            res.insert("decomposition".into(), abs_i.mul(&pol).dist(x));
            res.insert("skew_involution".into(), pol.mul(&pol).add(&one).norm());
            let value = if kind == DecompositionKind::AbsI { abs_i } else { pol };
            Ok(finish(value, res, root.error_budget, &root))
        }
        DecompositionKind::AbsF => {
            let h = half_of(x)?;
            let shifted = h.sub(x);
            let f = run(SpectralFn::Sgn, &shifted, &mapped(backend, |l| 0.5 - l))?;
            let abs_f = h.sub(&shifted.mul(&f.value));
            let idem = run(SpectralFn::Idem, x, backend)?;
            let two_abs = abs_f.add(&abs_f);
            let rebuilt = idem.value.add(&abs_f).sub(&two_abs.mul(&idem.value));
            res.insert("decomposition".into(), rebuilt.dist(x));
            Ok(finish(abs_f, res, f.error_budget + idem.error_budget, &f))
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult<R> {
    pub projector_minus: R,
    pub projector_plus: R,
    /// `−P⁻xP⁻`, so that `x = −q_minus + q_plus`.
    pub q_minus: R,
    pub q_plus: R,
    pub defects: BTreeMap<String, f64>,
}

pub fn spectral_split<R: Ring>(q: &R, backend: &Backend<R>) -> Result<SplitResult<R>> {
    let h = half_of(q)?;
    let f = run(SpectralFn::Sgn, q, backend)?.value;
    let one = q.one_like();
    let pm = h.mul(&one.sub(&f));
    let pp = h.mul(&one.add(&f));
    let q_minus = pm.mul(q).mul(&pm).neg();
    let q_plus = pp.mul(q).mul(&pp);
    let mut defects = BTreeMap::new();
    defects.insert("idempotent_minus".into(), pm.mul(&pm).dist(&pm));
    defects.insert("idempotent_plus".into(), pp.mul(&pp).dist(&pp));
    defects.insert("partition".into(), pm.add(&pp).dist(&one));
    defects.insert("commutator".into(), pp.mul(q).dist(&q.mul(&pp)));
    defects.insert("reassembly".into(), q_plus.sub(&q_minus).dist(q));
    Ok(SplitResult {
        projector_minus: pm,
        projector_plus: pp,
        q_minus,
        q_plus,
        defects,
    })
}

/// Closed-form Laurent coefficients of the pencil inverses, on `|n| ≤ m`.
/// `aux` is `sgn x` for the sign variants and `√x` for the root variant.
pub fn pencil_inverse_expansion<R: Ring>(
    x: &R,
    variant: ExpansionVariant,
    m: usize,
    aux: Option<&R>,
) -> Result<LaurentSeries<R>> {
    let one = x.one_like();
    let m = m as i64;
    let mut coeffs = Vec::new();
    match variant {
        ExpansionVariant::PencilSqrt => {
            let r = aux.ok_or_else(|| Error::InvalidInput("square-root data required".into()))?;
            let r_inv = invert(r, "√x")?;
            let sigma = r.sub(&one).mul(&invert(&r.add(&one), "√x + 1")?);
            let mut p = r_inv;
            for n in 0..=m {
                coeffs.push((n, p.clone()));
                if n > 0 {
                    coeffs.push((-n, p.clone()));
                }
                p = p.mul(&sigma);
            }
        }
        ExpansionVariant::PencilSignA | ExpansionVariant::PencilSignB => {
            let f = aux.ok_or_else(|| Error::InvalidInput("sign data required".into()))?;
            let h = half_of(x)?;
            let r = x.mul(f);
            let rho = r.sub(&one).mul(&invert(&r.add(&one), "|x|_r + 1")?);
            let plus = h.mul(&one.add(f));
            let minus = h.mul(&one.sub(f));
            let two = one.add(&one);
            if variant == ExpansionVariant::PencilSignA {
                let c = two.mul(&invert(&r.add(&one), "|x|_r + 1")?);
                let mut p = c;
                for n in 0..=m {
                    coeffs.push((n, plus.mul(&p)));
                    if n < m {
                        coeffs.push((-(n + 1), minus.mul(&p)));
                    }
                    p = p.mul(&rho);
                }
            } else {
                coeffs.push((0, f.clone()));
                let mut p = two.mul(&rho);
                for n in 1..=m {
                    coeffs.push((n, plus.mul(&p)));
                    coeffs.push((-n, minus.mul(&p).neg()));
                    p = p.mul(&rho);
                }
            }
        }
    }
    Ok(LaurentSeries::from_coeffs(x, coeffs)
        .with_window(-m, m)
        .with_class(GrowthClass::RapidRing))
}

/// `∫ ½(1+z)·Π(z)⁻¹`, cross-checked against `(1 + |x|_r)⁻¹` or `(1 + √x)⁻¹`.
pub fn aux_integral<R: Ring>(kind: AuxKind, x: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    let one = x.one_like();
    let (f, closed) = match kind {
        AuxKind::InvOnePlusAbsR => {
            let s = run(SpectralFn::Sgn, x, backend)?;
            (SpectralFn::InvOnePlusAbsR, one.add(&x.mul(&s.value)))
        }
        AuxKind::InvOnePlusSqrt => {
            let s = run(SpectralFn::Sqrt, x, backend)?;
            (SpectralFn::InvOnePlusSqrt, one.add(&s.value))
        }
    };
    let mut out = run(f, x, backend)?;
    let closed = invert(&closed, "closed form")?;
    out.residuals.insert("closed_form".into(), out.value.dist(&closed));
    Ok(out)
}
