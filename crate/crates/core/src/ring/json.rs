//! Matrix/scalar interchange format.
//!
//! ```json
//! {"kind":"complex_matrix","n":2,"data":[[3,0],[1,0],[0,0],[-2,0]]}
//! {"kind":"rational_matrix","n":1,"data":[[9,1]]}
//! ```
//! Entries are row-major; scalars are `n = 1` matrices.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::{Error, Result};

pub const MAX_DIM: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixJson {
    ComplexMatrix { n: usize, data: Vec<[f64; 2]> },
    RationalMatrix { n: usize, data: Vec<[i64; 2]> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixValue {
    Complex(Matrix<Complex64>),
    Rational(Matrix<BigRational>),
}

impl MatrixValue {
    pub fn dim(&self) -> usize {
        match self {
            MatrixValue::Complex(m) => m.dim(),
            MatrixValue::Rational(m) => m.dim(),
        }
    }

    /// Complex view of either variant.
    pub fn to_complex(&self) -> Matrix<Complex64> {
        match self {
            MatrixValue::Complex(m) => m.clone(),
            MatrixValue::Rational(m) => m.map(|q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)),
        }
    }
}

fn check_dim(n: usize, len: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Parse(format!("dimension {n} outside 1..={MAX_DIM}")));
    }
    if len != n * n {
        return Err(Error::Parse(format!("expected {} entries, found {len}", n * n)));
    }
    Ok(())
}

impl TryFrom<MatrixJson> for MatrixValue {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        match j {
            MatrixJson::ComplexMatrix { n, data } => {
                check_dim(n, data.len())?;
                if data.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::Parse("non-finite entry".into()));
                }
                let entries = data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                Ok(MatrixValue::Complex(Matrix::from_vec(n, entries)))
            }
            MatrixJson::RationalMatrix { n, data } => {
                check_dim(n, data.len())?;
                let entries = data
                    .iter()
                    .map(|[num, den]| {
                        if *den == 0 {
                            Err(Error::Parse("zero denominator".into()))
                        } else {
                            Ok(BigRational::new(BigInt::from(*num), BigInt::from(*den)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MatrixValue::Rational(Matrix::from_vec(n, entries)))
            }
        }
    }
}

impl MatrixValue {
    pub fn to_json(&self) -> Result<MatrixJson> {
        Ok(match self {
            MatrixValue::Complex(m) => MatrixJson::ComplexMatrix {
                n: m.dim(),
                data: m.entries().iter().map(|c| [c.re, c.im]).collect(),
            },
            MatrixValue::Rational(m) => MatrixJson::RationalMatrix {
                n: m.dim(),
                data: m
                    .entries()
                    .iter()
                    .map(|q| match (q.numer().to_i64(), q.denom().to_i64()) {
                        (Some(a), Some(b)) => Ok([a, b]),
                        _ if q.is_zero() => Ok([0, 1]),
                        _ => Err(Error::InvalidInput("rational entry exceeds i64".into())),
                    })
                    .collect::<Result<_>>()?,
            },
        })
    }
}

pub fn parse_matrix_json(s: &str) -> Result<MatrixValue> {
    let j: MatrixJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn matrix_to_json_string(m: &MatrixValue) -> Result<String> {
    Ok(serde_json::to_string(&m.to_json()?)?)
}
