use std::collections::BTreeMap;

use num_complex::Complex64;

use super::half_of;
use crate::ring::Ring;
use crate::Result;

/// Functions defined by a single spectral integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectralFn {
    Sgn,
    Sqrt,
    Idem,
    Fsqrt,
    /// `(|x|_r − 1)(|x|_r + 1)⁻¹`
    PertR,
    /// `(1 + |x|_r)⁻¹`
    InvOnePlusAbsR,
    /// `(1 + √x)⁻¹`
    InvOnePlusSqrt,
}

/// Laurent polynomial with ring coefficients, `[(exponent, coefficient)]`.
pub(crate) type Poly<R> = Vec<(i64, R)>;

impl SpectralFn {
    pub fn name(self) -> &'static str {
        match self {
            SpectralFn::Sgn => "sgn",
            SpectralFn::Sqrt => "sqrt",
            SpectralFn::Idem => "idem",
            SpectralFn::Fsqrt => "fsqrt",
            SpectralFn::PertR => "pert_r",
            SpectralFn::InvOnePlusAbsR => "inv_one_plus_absr",
            SpectralFn::InvOnePlusSqrt => "inv_one_plus_sqrt",
        }
    }

    /// Distance from `λ` to the excluded set of the function's class.
    pub fn excluded_distance(self, l: Complex64) -> f64 {
        let ray = |u: Complex64| if u.re <= 0.0 { u.im.abs() } else { u.norm() };
        match self {
            SpectralFn::Sgn | SpectralFn::PertR | SpectralFn::InvOnePlusAbsR => l.re.abs(),
            SpectralFn::Sqrt | SpectralFn::InvOnePlusSqrt => ray(l),
            SpectralFn::Idem => (l.re - 0.5).abs(),
            SpectralFn::Fsqrt => ray(Complex64::new(0.25, 0.0) - l),
        }
    }

    /// The scalar function on an eigenvalue; `None` on the excluded set.
    pub fn scalar(self, l: Complex64) -> Option<Complex64> {
        if self.excluded_distance(l) == 0.0 {
            return None;
        }
        let one = Complex64::new(1.0, 0.0);
        let sign = Complex64::new(l.re.signum(), 0.0);
        Some(match self {
            SpectralFn::Sgn => sign,
            SpectralFn::PertR => (l * sign - one) / (l * sign + one),
            SpectralFn::InvOnePlusAbsR => one / (one + l * sign),
            SpectralFn::Sqrt => l.sqrt(),
            SpectralFn::InvOnePlusSqrt => one / (one + l.sqrt()),
            SpectralFn::Idem => Complex64::new(if l.re > 0.5 { 1.0 } else { 0.0 }, 0.0),
            SpectralFn::Fsqrt => 0.5 - (0.25 - l).sqrt(),
        })
    }
}

/// Pencil `Π(z)` and numerator `N(z)`; the function value is `∫ N·Π⁻¹`.
pub(crate) fn pencil_and_numerator<R: Ring>(f: SpectralFn, x: &R) -> Result<(Poly<R>, Poly<R>)> {
    let one = x.one_like();
    match f {
        SpectralFn::Idem => return Ok((vec![(0, one.sub(x)), (1, x.clone())], vec![(1, x.clone())])),
        SpectralFn::Fsqrt => {
            let two_x = x.add(x);
            return Ok((
                vec![(-1, x.clone()), (0, one.sub(&two_x)), (1, x.clone())],
                vec![(0, x.clone()), (1, x.clone())],
            ));
        }
        _ => {}
    }
    let h = half_of(x)?;
    let plus = h.mul(&one.add(x));
    let minus = h.mul(&one.sub(x));
    let half_one_plus_z = vec![(0, h.clone()), (1, h.clone())];
    Ok(match f {
        SpectralFn::Sgn => (vec![(0, plus.clone()), (1, minus.clone())], vec![(0, plus), (1, minus.neg())]),
        SpectralFn::PertR => (
            vec![(0, plus.clone()), (1, minus.clone())],
            vec![(0, minus.neg()), (1, plus.neg())],
        ),
        SpectralFn::InvOnePlusAbsR => (vec![(0, plus), (1, minus)], half_one_plus_z),
        SpectralFn::Sqrt | SpectralFn::InvOnePlusSqrt => {
            let quarter_minus = h.mul(&minus);
            let pencil = vec![(-1, quarter_minus.clone()), (0, plus), (1, quarter_minus)];
            let numerator = if f == SpectralFn::Sqrt { vec![(0, x.clone())] } else { half_one_plus_z };
            (pencil, numerator)
        }
        SpectralFn::Idem | SpectralFn::Fsqrt => unreachable!(),
    })
}

/// Defects recomputed from the returned value.
pub(crate) fn residuals<R: Ring>(f: SpectralFn, x: &R, v: &R) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    out.insert("commutator".to_string(), v.mul(x).dist(&x.mul(v)));
    let one = x.one_like();
    match f {
        SpectralFn::Sgn => {
            out.insert("involution".into(), v.mul(v).dist(&one));
        }
        SpectralFn::Sqrt => {
            out.insert("square".into(), v.mul(v).dist(x));
        }
        SpectralFn::Idem => {
            out.insert("idempotent".into(), v.mul(v).dist(v));
        }
        SpectralFn::Fsqrt => {
            out.insert("fsqrt".into(), v.mul(&one.sub(v)).dist(x));
        }
        _ => {}
    }
    Ok(out)
}
