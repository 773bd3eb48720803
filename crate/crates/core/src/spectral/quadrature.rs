use num_complex::Complex64;

use super::integrand::Poly;
use super::{ClassMode, MIN_MARGIN};
use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Summation {
    /// Ascending node index, one running sum.
    #[default]
    Sequential,
    Pairwise,
}

/// `k`-th of the `n`-th roots of unity.
pub fn node(k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

pub(crate) struct NodeMean<R> {
    pub value: R,
    /// `‖I_N − I_{N/2}‖`, with `I_{N/2}` from the even-indexed nodes.
    pub alias_estimate: f64,
    pub margin: f64,
}

pub(crate) fn check_nodes(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidInput(format!("node count {n} is not a power of two ≥ 2")));
    }
    Ok(())
}

pub(crate) fn scalar_like<R: Ring>(proto: &R, c: Complex64) -> Result<R> {
    proto.embed_complex(c).ok_or(Error::UnsupportedBackend {
        backend: "quadrature",
        what: "ring without a complex embedding".into(),
    })
}

pub(crate) fn poly_at<R: Ring>(poly: &Poly<R>, z: Complex64) -> Result<R> {
    let proto = &poly[0].1;
    let mut acc = proto.zero_like();
    for (k, c) in poly {
        acc = acc.add(&c.mul(&scalar_like(proto, z.powi(*k as i32))?));
    }
    Ok(acc)
}

pub(crate) fn sum<R: Ring>(values: &[R], summation: Summation) -> R {
    match summation {
        Summation::Sequential => {
            let mut acc = values[0].clone();
            for v in &values[1..] {
                acc = acc.add(v);
            }
            acc
        }
        Summation::Pairwise => {
            if values.len() == 1 {
                values[0].clone()
            } else {
                let mid = values.len() / 2;
                sum(&values[..mid], summation).add(&sum(&values[mid..], summation))
            }
        }
    }
}

pub(crate) fn mean<R: Ring>(values: &[R], summation: Summation) -> Result<R> {
    let s = sum(values, summation);
    Ok(s.mul(&scalar_like(&s, Complex64::new(1.0 / values.len() as f64, 0.0))?))
}

/// Inverse of a pencil value with its margin `1/‖Π⁻¹‖`.
pub(crate) fn guarded_inverse<R: Ring>(p: &R, mode: ClassMode, at: &str) -> Result<(R, f64)> {
    let inv = p
        .try_invert()
        .ok_or_else(|| Error::ClassViolation(format!("pencil singular at {at}")))?;
    let margin = 1.0 / inv.norm();
    if mode == ClassMode::Certify && !(margin >= MIN_MARGIN) {
        return Err(Error::ClassViolation(format!("pencil margin {margin:e} at {at}")));
    }
    Ok((inv, margin))
}

/// Average `values[k]` together with the half-resolution estimate from the
/// even indices.
pub(crate) fn with_alias_estimate<R: Ring>(values: &[R], summation: Summation) -> Result<(R, f64)> {
    let full = mean(values, summation)?;
    let evens: Vec<R> = values.iter().step_by(2).cloned().collect();
    let half = mean(&evens, summation)?;
    let est = full.dist(&half);
    Ok((full, est))
}

pub(crate) fn node_mean<R: Ring>(
    pencil: &Poly<R>,
    numerator: &Poly<R>,
    n: usize,
    summation: Summation,
    mode: ClassMode,
) -> Result<NodeMean<R>> {
    check_nodes(n)?;
    let mut values = Vec::with_capacity(n);
    let mut margin = f64::INFINITY;
    for k in 0..n {
        let z = node(k, n);
        let p = poly_at(pencil, z)?;
        let (inv, m) = guarded_inverse(&p, mode, &format!("node {k}/{n}"))?;
        margin = margin.min(m);
        values.push(poly_at(numerator, z)?.mul(&inv));
    }
    let (value, alias_estimate) = with_alias_estimate(&values, summation)?;
    Ok(NodeMean {
        value,
        alias_estimate,
        margin,
    })
}
