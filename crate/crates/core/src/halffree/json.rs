//! Basis-coefficient dumps: `{"space":"two_var_angle","coeffs":{"2,1":elem}}`.
//! One-variable spaces use single-index keys such as `"-3"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::basis::{BasisIndex, SpaceTag, SymmetrizedSeries};
use crate::laurent::json::{JsonElement, MAX_WINDOW};
use crate::{Error, Result};

/// Most coefficients accepted from untrusted input.
pub const MAX_TERMS: usize = 1 << 16;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisJson {
    space: SpaceTag,
    coeffs: BTreeMap<String, Value>,
}

fn key((j, k): BasisIndex, two_var: bool) -> String {
    if two_var {
        format!("{j},{k}")
    } else {
        j.to_string()
    }
}

fn parse_key(s: &str, two_var: bool) -> Result<BasisIndex> {
    let num = |t: &str| -> Result<i64> {
        let v: i64 = t.trim().parse().map_err(|_| Error::Parse(format!("bad basis index {s:?}")))?;
        if v.abs() > MAX_WINDOW {
            return Err(Error::Parse(format!("basis index {v} outside ±{MAX_WINDOW}")));
        }
        Ok(v)
    };
    let parts: Vec<&str> = s.split(',').collect();
    match (two_var, parts.as_slice()) {
        (false, [j]) => Ok((num(j)?, 0)),
        (true, [j, k]) => Ok((num(j)?, num(k)?)),
        _ => Err(Error::Parse(format!("basis key {s:?} does not fit the space"))),
    }
}

pub fn basis_to_json_string<R: JsonElement>(s: &SymmetrizedSeries<R>) -> String {
    let two_var = s.space().is_two_var();
    let doc = BasisJson {
        space: s.space(),
        coeffs: s.terms().map(|(i, c)| (key(i, two_var), c.to_value())).collect(),
    };
    serde_json::to_string(&doc).expect("basis series serializes")
}

pub fn parse_basis_json<R: JsonElement>(text: &str) -> Result<SymmetrizedSeries<R>> {
    let doc: BasisJson = serde_json::from_str(text)?;
    if doc.coeffs.len() > MAX_TERMS {
        return Err(Error::Parse(format!("more than {MAX_TERMS} coefficients")));
    }
    let two_var = doc.space.is_two_var();
    let proto = R::json_zero();
    let mut out = SymmetrizedSeries::zero(doc.space, &proto);
    for (k, v) in &doc.coeffs {
        let idx = parse_key(k, two_var)?;
        out.add_term(idx, &R::from_value(v)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn round_trip() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let s = SymmetrizedSeries::from_terms(
            SpaceTag::TwoVarMixed,
            &q(0, 1),
            vec![((-1, 2), q(3, 4)), ((2, -1), q(-3, 4)), ((0, 0), q(5, 1))],
        )
        .unwrap();
        let text = basis_to_json_string(&s);
        assert_eq!(parse_basis_json::<BigRational>(&text).unwrap(), s);
        let one = SymmetrizedSeries::from_terms(SpaceTag::Bracket, &q(0, 1), vec![((-2, 0), q(1, 1))]).unwrap();
        assert_eq!(parse_basis_json::<BigRational>(&basis_to_json_string(&one)).unwrap(), one);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"space":"angle","coeffs":{"1,2":"1"}}"#,
            r#"{"space":"two_var_angle","coeffs":{"1":"1"}}"#,
            r#"{"space":"angle","coeffs":{"x":"1"}}"#,
            r#"{"space":"angle","coeffs":{"99999999":"1"}}"#,
            r#"{"space":"angle","coeffs":{"1":"1/0"}}"#,
            r#"{"space":"nowhere","coeffs":{}}"#,
            r#"{"space":"angle","coeffs":{},"extra":1}"#,
        ] {
            assert!(parse_basis_json::<BigRational>(bad).is_err(), "{bad}");
        }
    }
}
