use num_complex::Complex64;
use serde::Serialize;

use super::integrand::Poly;
use super::oracle::conjugate;
use super::quadrature::{check_nodes, node, poly_at, scalar_like};
use super::{half_of, Backend, SpectralClassTag, MIN_MARGIN};
use crate::laurent::FLOAT_DECAY_THRESHOLD;
use crate::ring::{Ring, DEFAULT_TOLERANCE};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub tag: SpectralClassTag,
    pub status: CertificateStatus,
    pub method: String,
    pub margin: Option<f64>,
    pub detail: String,
}

/// Relative weight of negative Fourier modes above which a disk pencil is
/// treated as singular somewhere inside the disk.
const WINDING_TOLERANCE: f64 = 1e-6;

fn cert(tag: SpectralClassTag, status: CertificateStatus, method: &str, margin: Option<f64>, detail: String) -> Certificate {
    Certificate {
        tag,
        status,
        method: method.to_string(),
        margin,
        detail,
    }
}

fn algebraic<R: Ring>(x: &R, tag: SpectralClassTag) -> Certificate {
    let one = x.one_like();
    let sq = x.mul(x);
    let defect = match tag {
        SpectralClassTag::Involution => sq.sub(&one),
        SpectralClassTag::SkewInvolution => sq.add(&one),
        _ => sq.sub(x),
    };
    let ok = if x.is_exact() { defect.is_zero() } else { defect.norm() <= DEFAULT_TOLERANCE };
    let status = if ok { CertificateStatus::Certified } else { CertificateStatus::Refuted };
    cert(tag, status, "multiplication", Some(defect.norm()), format!("defect {:e}", defect.norm()))
}

/// Pencil checked by the quadrature certificate, and whether it must also
/// be invertible inside the unit disk (not only on the circle).
fn scan_pencil<R: Ring>(x: &R, tag: SpectralClassTag) -> Result<(Poly<R>, bool)> {
    let one = x.one_like();
    let lam = |y: &R| -> Result<Poly<R>> {
        let h = half_of(y)?;
        Ok(vec![(0, h.mul(&one.add(y))), (1, h.mul(&one.sub(y)))])
    };
    let lam3 = |y: &R| -> Result<Poly<R>> {
        let h = half_of(y)?;
        let side = h.mul(&h).mul(&one.sub(y));
        Ok(vec![(-1, side.clone()), (0, h.mul(&one.add(y))), (1, side)])
    };
    Ok(match tag {
        SpectralClassTag::AvoidImagAxis => (lam(x)?, false),
        SpectralClassTag::AvoidLeftHalf => (lam(x)?, true),
        SpectralClassTag::AvoidNegReals => (lam3(x)?, false),
        SpectralClassTag::AvoidRealAxis => (lam3(&x.mul(x).neg())?, false),
        SpectralClassTag::AvoidShiftedImagAxis => (vec![(0, one.sub(x)), (1, x.clone())], false),
        // 1 − x + xz on |z| ≥ 1, written in w = z⁻¹
        SpectralClassTag::AvoidShiftedLeftHalf => (vec![(0, x.clone()), (1, one.sub(x))], true),
        SpectralClassTag::AvoidQuarterShiftedNegReals => {
            let two_x = x.add(x);
            (vec![(-1, x.clone()), (0, one.sub(&two_x)), (1, x.clone())], false)
        }
        SpectralClassTag::DiskComplementAvoided => (vec![(0, one.clone()), (1, x.neg())], true),
        _ => unreachable!("algebraic tags are handled separately"),
    })
}

fn quadrature_cert<R: Ring>(x: &R, tag: SpectralClassTag, n: usize) -> Result<Certificate> {
    check_nodes(n)?;
    let (pencil, disk) = scan_pencil(x, tag)?;
    let method = format!("quadrature scan N={n}");
    let mut margin = f64::INFINITY;
    let mut worst = 0;
    let mut inverses = Vec::with_capacity(n);
    for k in 0..n {
        let value = poly_at(&pencil, node(k, n))?;
        let inv = value.try_invert();
        let m = inv.as_ref().map(|i| 1.0 / i.norm()).unwrap_or(0.0);
        if m < margin {
            margin = m;
            worst = k;
        }
        inverses.push(inv);
    }
    if margin < MIN_MARGIN {
        let detail = format!("singular near node {worst}/{n}");
        return Ok(cert(tag, CertificateStatus::Refuted, &method, Some(margin), detail));
    }
    if disk {
        // Fourier modes of the inverse on the circle; negative ones appear
        // exactly when the pencil is singular inside the disk.
        let inverses: Vec<R> = inverses.into_iter().flatten().collect();
        let (mut neg, mut total) = (0.0, 0.0);
        for j in 0..n as i64 {
            let idx = if j < n as i64 / 2 { j } else { j - n as i64 };
            let mut acc = x.zero_like();
            for (k, inv) in inverses.iter().enumerate() {
                let w = scalar_like(x, node(k, n).powi(-idx as i32))?;
                acc = acc.add(&inv.mul(&w));
            }
            let size = acc.norm() / n as f64;
            total += size;
            if idx < 0 {
                neg += size;
            }
        }
        if neg > WINDING_TOLERANCE * total {
            let detail = format!("inverse has negative modes of relative weight {:e}", neg / total);
            return Ok(cert(tag, CertificateStatus::Refuted, &method, Some(margin), detail));
        }
    }
    Ok(cert(tag, CertificateStatus::Certified, &method, Some(margin), format!("minimum margin at node {worst}/{n}")))
}

fn series_cert<R: Ring>(x: &R, tag: SpectralClassTag, order: usize) -> Result<Certificate> {
    let one = x.one_like();
    let w = match tag {
        SpectralClassTag::AvoidLeftHalf => match one.add(x).try_invert() {
            Some(inv) => one.sub(x).mul(&inv),
            None => {
                return Ok(cert(tag, CertificateStatus::Refuted, "cayley", None, "1 + x is singular".into()));
            }
        },
        SpectralClassTag::AvoidShiftedLeftHalf => match x.try_invert() {
            Some(inv) => inv.mul(&one.sub(x)),
            None => return Ok(cert(tag, CertificateStatus::Refuted, "cayley", None, "x is singular".into())),
        },
        SpectralClassTag::DiskComplementAvoided => x.clone(),
        _ => {
            return Ok(cert(
                tag,
                CertificateStatus::Inconclusive,
                "series",
                None,
                "two-sided class needs the quadrature backend".into(),
            ))
        }
    };
    let (ok, measure, rule) = if x.is_exact() {
        let p = w.norm();
        (p < 1.0, p, "p(W) < 1".to_string())
    } else {
        let p = w.pow(order as u32).norm();
        (p <= FLOAT_DECAY_THRESHOLD * one.norm(), p, format!("p(W^{order}) ≤ 1e-12·p(1)"))
    };
    let status = if ok {
        CertificateStatus::Certified
    } else {
        CertificateStatus::Inconclusive
    };
    Ok(cert(tag, status, "decay certificate", Some(measure), rule))
}

fn oracle_cert<R: Ring>(x: &R, tag: SpectralClassTag, v: &R, eig: &[Complex64]) -> Result<Certificate> {
    let rebuilt = conjugate(x, v, eig)?;
    if rebuilt.dist(x) > 1e-8 * (1.0 + x.norm()) {
        return Ok(cert(
            tag,
            CertificateStatus::Inconclusive,
            "oracle",
            None,
            "eigen-data does not reproduce the input".into(),
        ));
    }
    let ray = |u: Complex64| if u.re <= 0.0 { u.im.abs() } else { u.norm() };
    let dist = |l: Complex64| -> f64 {
        match tag {
            SpectralClassTag::AvoidImagAxis => l.re.abs(),
            SpectralClassTag::AvoidLeftHalf => l.re.max(0.0),
            SpectralClassTag::AvoidNegReals => ray(l),
            SpectralClassTag::AvoidShiftedImagAxis => (l.re - 0.5).abs(),
            SpectralClassTag::AvoidShiftedLeftHalf => (l.re - 0.5).max(0.0),
            SpectralClassTag::AvoidQuarterShiftedNegReals => ray(Complex64::new(0.25, 0.0) - l),
            SpectralClassTag::DiskComplementAvoided => (1.0 - l.norm()).max(0.0),
            SpectralClassTag::AvoidRealAxis => l.im.abs(),
            _ => unreachable!(),
        }
    };
    let margin = eig.iter().map(|l| dist(*l)).fold(f64::INFINITY, f64::min);
    let status = if margin >= MIN_MARGIN {
        CertificateStatus::Certified
    } else {
        CertificateStatus::Refuted
    };
    Ok(cert(tag, status, "oracle eigenvalues", Some(margin), format!("{} eigenvalues", eig.len())))
}

pub fn class_membership<R: Ring>(x: &R, tag: SpectralClassTag, backend: &Backend<R>) -> Result<Certificate> {
    if matches!(
        tag,
        SpectralClassTag::Involution | SpectralClassTag::SkewInvolution | SpectralClassTag::Idempotent
    ) {
        return Ok(algebraic(x, tag));
    }
    match backend {
        Backend::Quadrature { nodes, .. } => quadrature_cert(x, tag, *nodes),
        Backend::SeriesCayley { order, .. } => series_cert(x, tag, *order),
        Backend::Oracle { v, eigenvalues } => oracle_cert(x, tag, v, eigenvalues),
    }
}
