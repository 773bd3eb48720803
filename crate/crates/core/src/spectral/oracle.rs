use num_complex::Complex64;

use super::integrand::SpectralFn;
use super::{invert, ClassMode, MIN_MARGIN};
use crate::ring::Ring;
use crate::{Error, Result};

/// `V·diag(values)·V⁻¹`, shaped like `proto`.
pub(crate) fn conjugate<R: Ring>(proto: &R, v: &R, values: &[Complex64]) -> Result<R> {
    let d = proto.from_diagonal(values).ok_or(Error::UnsupportedBackend {
        backend: "oracle",
        what: format!("ring cannot hold a diagonal of length {}", values.len()),
    })?;
    let v_inv = invert(v, "oracle conjugation V")?;
    Ok(v.mul(&d).mul(&v_inv))
}

pub(crate) fn oracle_value<R: Ring>(
    f: SpectralFn,
    x: &R,
    v: &R,
    eigenvalues: &[Complex64],
    mode: ClassMode,
) -> Result<(R, f64)> {
    let rebuilt = conjugate(x, v, eigenvalues)?;
    let scale = 1.0 + x.norm();
    if rebuilt.dist(x) > 1e-8 * scale {
        return Err(Error::InvalidInput("eigen-data does not reproduce the input".into()));
    }
    let margin = eigenvalues
        .iter()
        .map(|l| f.excluded_distance(*l))
        .fold(f64::INFINITY, f64::min);
    if mode == ClassMode::Certify && !(margin >= MIN_MARGIN) {
        return Err(Error::ClassViolation(format!("eigenvalue within {margin:e} of the excluded set")));
    }
    let values = eigenvalues
        .iter()
        .map(|l| f.scalar(*l))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::ClassViolation("eigenvalue on the excluded set".into()))?;
    Ok((conjugate(x, v, &values)?, margin))
}
