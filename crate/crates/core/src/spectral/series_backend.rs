use super::integrand::{Poly, SpectralFn};
use super::invert;
use crate::laurent::{integrate_z0, invert_unit_pencil, transform_variable, LaurentSeries, Substitution};
use crate::ring::Ring;
use crate::{Error, Result};

/// Inverse of `a₀ + a₁z` as a one-sided series: in `z` when `a₀⁻¹a₁` passes
/// the decay certificate, otherwise in `z⁻¹` when `a₁⁻¹a₀` does.
pub(crate) fn one_sided_inverse<R: Ring>(a0: &R, a1: &R, order: usize) -> Result<LaurentSeries<R>> {
    let first_err = match z_side_inverse(a0, a1, order) {
        Ok(s) => return Ok(s),
        Err(e) => e,
    };
    let mirror = (|| {
        let a1_inv = invert(a1, "linear term of the pencil")?;
        let v = a1_inv.mul(a0);
        let s = transform_variable(&invert_unit_pencil(&v, order)?, Substitution::InvertZ);
        Ok::<_, Error>(s.mul(&LaurentSeries::monomial(a1_inv, -1)))
    })();
    mirror.map_err(|_| first_err)
}

/// `(a₀ + a₁z)⁻¹ = (1 + a₀⁻¹a₁z)⁻¹a₀⁻¹` expanded in nonnegative powers.
pub(crate) fn z_side_inverse<R: Ring>(a0: &R, a1: &R, order: usize) -> Result<LaurentSeries<R>> {
    let a0_inv = invert(a0, "constant term of the pencil")?;
    let w = a0_inv.mul(a1);
    Ok(invert_unit_pencil(&w, order)?.scale_right(&a0_inv))
}

pub(crate) fn series_mean<R: Ring>(f: SpectralFn, pencil: &Poly<R>, numerator: &Poly<R>, order: usize) -> Result<R> {
    if pencil.iter().any(|(k, _)| *k != 0 && *k != 1) {
        return Err(Error::UnsupportedBackend {
            backend: "series",
            what: format!("{} has a two-sided pencil", f.name()),
        });
    }
    let proto = pencil[0].1.zero_like();
    let coeff = |k: i64| {
        pencil
            .iter()
            .find(|(e, _)| *e == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| proto.clone())
    };
    let inv = one_sided_inverse(&coeff(0), &coeff(1), order)?;
    let num = LaurentSeries::from_coeffs(&proto, numerator.iter().cloned());
    Ok(integrate_z0(&num.mul(&inv)))
}
