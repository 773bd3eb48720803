//! Reproducible test matrices `V·D·V⁻¹` with known eigen-data.
//!
//! `V` is unit upper-triangular with integer entries in `[−3, 3]`, so its
//! inverse is exact and the oracle backend can reproduce `f(V·D·V⁻¹)` as
//! `V·f(D)·V⁻¹` without an eigensolver.

use num_complex::Complex64;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ring::json::{MatrixJson, MatrixValue};
use crate::ring::{Matrix, Ring};
use crate::spectral::{Backend, SpectralFn};
use crate::{Error, Result};

type C = Complex64;

/// Largest off-diagonal magnitude in `V`.
pub const V_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub matrix: Matrix<C>,
    pub v: Matrix<C>,
    pub eigenvalues: Vec<C>,
}

/// On-disk record of `V` and the diagonal.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Sidecar {
    pub v: MatrixJson,
    pub eigenvalues: Vec<[f64; 2]>,
}

fn unit_upper(n: usize, rng: &mut ChaCha8Rng) -> Matrix<C> {
    let mut v = Matrix::identity(n, &C::new(0.0, 0.0));
    for i in 0..n {
        for j in i + 1..n {
            v.set(i, j, C::new(rng.gen_range(-V_BOUND..=V_BOUND) as f64, 0.0));
        }
    }
    v
}

/// Fails unless every eigenvalue is at least `margin` from the excluded set
/// of `f`.
pub fn check_margin(f: SpectralFn, eigenvalues: &[C], margin: f64) -> Result<()> {
    for l in eigenvalues {
        let d = f.excluded_distance(*l);
        if !(d >= margin) {
            return Err(Error::ClassViolation(format!(
                "eigenvalue {l} is {d:.3e} from the excluded set of {}, below the margin {margin}",
                f.name()
            )));
        }
    }
    Ok(())
}

/// `V·diag(λ)·V⁻¹` with `V` drawn from `seed`. Fewer than `n` eigenvalues are
/// repeated cyclically.
pub fn generate(n: usize, eigenvalues: &[C], seed: u64) -> Result<Fixture> {
    if n == 0 || eigenvalues.is_empty() {
        return Err(Error::InvalidInput("need n ≥ 1 and at least one eigenvalue".into()));
    }
    if eigenvalues.len() > n {
        return Err(Error::InvalidInput(format!("{} eigenvalues for n = {n}", eigenvalues.len())));
    }
    let diag: Vec<C> = eigenvalues.iter().cycle().take(n).copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = unit_upper(n, &mut rng);
    let v_inv = v
        .try_invert()
        .ok_or_else(|| Error::NotInvertible("unit upper-triangular V".into()))?;
    let matrix = v.mul(&Matrix::diagonal(diag.clone())).mul(&v_inv);
    Ok(Fixture {
        matrix,
        v,
        eigenvalues: diag,
    })
}

/// [`generate`] after a [`check_margin`] for `f`.
pub fn generate_for(f: SpectralFn, n: usize, eigenvalues: &[C], margin: f64, seed: u64) -> Result<Fixture> {
    check_margin(f, eigenvalues, margin)?;
    generate(n, eigenvalues, seed)
}

/// `n` eigenvalues at least `margin` from the excluded set of `f`, drawn
/// from a bounded region around the allowed set.
pub fn random_spectrum(f: SpectralFn, n: usize, margin: f64, seed: u64) -> Vec<C> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let reach = margin + 2.5;
    (0..n)
        .map(|k| {
            let side = if k % 2 == 0 { 1.0 } else { -1.0 };
            let d = rng.gen_range(margin..reach);
            let im = rng.gen_range(-1.0..1.0);
            match f {
                SpectralFn::Sgn | SpectralFn::PertR | SpectralFn::InvOnePlusAbsR => C::new(side * d, im),
                SpectralFn::Sqrt | SpectralFn::InvOnePlusSqrt => C::new(d, im),
                SpectralFn::Idem => C::new(0.5 + side * d.min(margin + 1.5), im),
                SpectralFn::Fsqrt => C::new(0.25 - d, im),
            }
        })
        .collect()
}

impl Fixture {
    pub fn oracle(&self) -> Backend<Matrix<C>> {
        Backend::Oracle {
            v: self.v.clone(),
            eigenvalues: self.eigenvalues.clone(),
        }
    }

    /// `V·f(D)·V⁻¹`.
    pub fn expected(&self, f: SpectralFn) -> Result<Matrix<C>> {
        let values = self
            .eigenvalues
            .iter()
            .map(|l| f.scalar(*l))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::ClassViolation("eigenvalue on the excluded set".into()))?;
        let v_inv = self
            .v
            .try_invert()
            .ok_or_else(|| Error::NotInvertible("V".into()))?;
        Ok(self.v.mul(&Matrix::diagonal(values)).mul(&v_inv))
    }

    pub fn sidecar(&self) -> Result<Sidecar> {
        Ok(Sidecar {
            v: MatrixValue::Complex(self.v.clone()).to_json()?,
            eigenvalues: self.eigenvalues.iter().map(|l| [l.re, l.im]).collect(),
        })
    }

    pub fn from_parts(matrix: Matrix<C>, sidecar: &Sidecar) -> Result<Self> {
        let v = MatrixValue::try_from(sidecar.v.clone())?.to_complex();
        let eigenvalues: Vec<C> = sidecar.eigenvalues.iter().map(|[re, im]| C::new(*re, *im)).collect();
        if v.dim() != matrix.dim() || eigenvalues.len() != matrix.dim() {
            return Err(Error::Dimension(format!(
                "matrix {} vs sidecar V {} with {} eigenvalues",
                matrix.dim(),
                v.dim(),
                eigenvalues.len()
            )));
        }
        Ok(Fixture { matrix, v, eigenvalues })
    }
}

pub fn parse_sidecar_json(s: &str) -> Result<Sidecar> {
    Ok(serde_json::from_str(s)?)
}

/// Parses `3`, `-2`, `0.4+0.2i`, `-1-i`, `2i`.
pub fn parse_eigenvalue(s: &str) -> Result<C> {
    let s = s.trim();
    let bad = || Error::Parse(format!("eigenvalue {s:?}"));
    let Some(body) = s.strip_suffix('i') else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(C::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrix() {
        let e = [C::new(3.0, 0.0), C::new(-2.0, 0.0)];
        assert_eq!(generate(2, &e, 7).unwrap(), generate(2, &e, 7).unwrap());
    }

    #[test]
    fn v_is_unit_upper_triangular_and_bounded() {
        let f = generate(5, &[C::new(1.0, 0.0)], 11).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let x = f.v.get(i, j);
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => assert_eq!(*x, C::new(1.0, 0.0)),
                    std::cmp::Ordering::Greater => assert_eq!(*x, C::new(0.0, 0.0)),
                    std::cmp::Ordering::Less => assert!(x.re.abs() <= 3.0 && x.re.fract() == 0.0),
                }
            }
        }
    }

    #[test]
    fn eigenvalue_syntax() {
        assert_eq!(parse_eigenvalue("3").unwrap(), C::new(3.0, 0.0));
        assert_eq!(parse_eigenvalue("-2").unwrap(), C::new(-2.0, 0.0));
        assert_eq!(parse_eigenvalue("0.4+0.2i").unwrap(), C::new(0.4, 0.2));
        assert_eq!(parse_eigenvalue("-1-i").unwrap(), C::new(-1.0, -1.0));
        assert_eq!(parse_eigenvalue("2i").unwrap(), C::new(0.0, 2.0));
        assert_eq!(parse_eigenvalue("1e-3-2e+1i").unwrap(), C::new(1e-3, -20.0));
        assert!(parse_eigenvalue("abc").is_err());
        assert!(parse_eigenvalue("inf").is_err());
    }

    #[test]
    fn margin_violation() {
        let e = [C::new(0.52, 0.0)];
        assert!(generate_for(SpectralFn::Idem, 1, &e, 0.05, 1).is_err());
        assert!(generate_for(SpectralFn::Idem, 1, &e, 0.01, 1).is_ok());
    }

    #[test]
    fn random_spectra_respect_the_margin() {
        for f in [SpectralFn::Sgn, SpectralFn::Sqrt, SpectralFn::Idem, SpectralFn::Fsqrt] {
            for seed in 0..20 {
                check_margin(f, &random_spectrum(f, 4, 0.3, seed), 0.3).unwrap();
            }
        }
    }
}
