//! Debug dumps of series: `{"window":[lo,hi],"class":"rapid_ring","coeffs":{"-1":elem,...}}`.
//!
//! Rational elements are strings such as `"-3/4"`; complex elements are
//! `[re, im]` pairs.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{GrowthClass, LaurentSeries};
use crate::ring::Ring;
use crate::{Error, Result};

/// Widest window accepted from untrusted input.
pub const MAX_WINDOW: i64 = 1 << 16;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    window: [i64; 2],
    class: GrowthClass,
    coeffs: BTreeMap<String, Value>,
}

pub trait JsonElement: Ring {
    fn to_value(&self) -> Value;
    fn from_value(v: &Value) -> Result<Self>;
    fn json_zero() -> Self;
}

impl JsonElement for BigRational {
    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_value(v: &Value) -> Result<Self> {
        let s = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(Error::Parse(format!("rational element expected, got {v}"))),
        };
        if s.len() > 4096 {
            return Err(Error::Parse("rational element too long".into()));
        }
        let r = BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
        Ok(r)
    }
    fn json_zero() -> Self {
        BigRational::from_integer(0.into())
    }
}

impl JsonElement for Complex64 {
    fn to_value(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_value(v: &Value) -> Result<Self> {
        let pair: [f64; 2] = serde_json::from_value(v.clone())?;
        if !pair.iter().all(|x| x.is_finite()) {
            return Err(Error::Parse("non-finite complex entry".into()));
        }
        Ok(Complex64::new(pair[0], pair[1]))
    }
    fn json_zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

pub fn series_to_json_string<R: JsonElement>(a: &LaurentSeries<R>) -> String {
    let (lo, hi) = a.window();
    let doc = SeriesJson {
        window: [lo, hi],
        class: a.class(),
        coeffs: a.terms().map(|(n, c)| (n.to_string(), c.to_value())).collect(),
    };
    serde_json::to_string(&doc).expect("series serializes")
}

pub fn parse_series_json<R: JsonElement>(text: &str) -> Result<LaurentSeries<R>> {
    let doc: SeriesJson = serde_json::from_str(text)?;
    let [lo, hi] = doc.window;
    if lo > hi || hi.saturating_sub(lo) > MAX_WINDOW {
        return Err(Error::Parse(format!("invalid window [{lo},{hi}]")));
    }
    let mut coeffs = Vec::with_capacity(doc.coeffs.len());
    for (k, v) in &doc.coeffs {
        let n: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
        if n < lo || n > hi {
            return Err(Error::Parse(format!("exponent {n} outside window")));
        }
        coeffs.push((n, R::from_value(v)?));
    }
    Ok(LaurentSeries::from_coeffs(&R::json_zero(), coeffs)
        .with_window(lo, hi)
        .with_class(doc.class)
        .with_one_sided(lo >= 0))
}
