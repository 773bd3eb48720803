use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::ring::Ring;
use crate::{Error, Result};

/// Which symmetrized series space a [`SymmetrizedSeries`] lives in.
///
/// Basis indices are signed: `k > 0` is the even element of order `k`,
/// `k < 0` the odd element of order `|k|`, `0` the unit. Two-variable spaces
/// use index pairs `(j, k)`; single-variable spaces keep `k = 0`.
///
/// * `Angle`: `1`, `(zᵏ ± z⁻ᵏ)/2`
/// * `Bracket`: `1`, `zᵏ ± z⁻ᵏ`
/// * `TwoVarAngle`: products of `Angle` elements in `z` and `w`
/// * `TwoVarMixed`: `1`, the `Angle` elements in one variable, and
///   `(zʲ ± z⁻ʲ)(wᵏ ± w⁻ᵏ)/2` for `j, k ≥ 1`
/// * `TwoVarBracket`: products of `Bracket` elements
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceTag {
    Angle,
    Bracket,
    TwoVarAngle,
    TwoVarMixed,
    TwoVarBracket,
}

impl SpaceTag {
    pub fn is_two_var(self) -> bool {
        !matches!(self, SpaceTag::Angle | SpaceTag::Bracket)
    }
}

pub type BasisIndex = (i64, i64);

/// Laurent polynomial in `z, w` keyed by exponent pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivariate<R> {
    proto: R,
    terms: BTreeMap<(i64, i64), R>,
}

impl<R: Ring> Bivariate<R> {
    pub fn zero(proto: &R) -> Self {
        Bivariate {
            proto: proto.zero_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(proto: &R, terms: impl IntoIterator<Item = ((i64, i64), R)>) -> Self {
        let mut out = Self::zero(proto);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn monomial(c: R, n: i64, m: i64) -> Self {
        let mut out = Self::zero(&c);
        out.add_term((n, m), &c);
        out
    }

    pub fn add_term(&mut self, e: (i64, i64), c: &R) {
        let next = match self.terms.get(&e) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    pub fn coeff(&self, n: i64, m: i64) -> R {
        self.terms.get(&(n, m)).cloned().unwrap_or_else(|| self.proto.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∬ a`, the coefficient of `z⁰w⁰`.
    pub fn double_integral(&self) -> R {
        self.coeff(0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.proto);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term((a + c, b + d), &x.mul(y));
            }
        }
        out
    }

    /// `a(w, z)`.
    pub fn swapped(&self) -> Self {
        Self::from_terms(&self.proto, self.terms.iter().map(|((n, m), c)| ((*m, *n), c.clone())))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|(n, m)| self.coeff(*n, *m).approx_eq(&other.coeff(*n, *m), tol))
    }
}

/// Element of one of the symmetrized series spaces, stored by basis index.
/// Coefficients are plain ring elements; no basis element needs `½` to be
/// represented.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizedSeries<R> {
    space: SpaceTag,
    proto: R,
    coeffs: BTreeMap<BasisIndex, R>,
}

/// Integer expansion `den · basis = Σ c·zⁿwᵐ`, returned as `(den, terms)`.
pub(crate) type IntExpansion = (i64, Vec<((i64, i64), i64)>);

/// `zᵏ + z⁻ᵏ`, `zᵏ − z⁻ᵏ`, or `2` for `k = 0`.
fn doubled_angle(k: i64) -> Vec<(i64, i64)> {
    match k.signum() {
        0 => vec![(0, 2)],
        1 => vec![(k, 1), (-k, 1)],
        _ => vec![(-k, 1), (k, -1)],
    }
}

/// `zᵏ + z⁻ᵏ`, `zᵏ − z⁻ᵏ`, or `1` for `k = 0`.
fn bracket(k: i64) -> Vec<(i64, i64)> {
    if k == 0 {
        vec![(0, 1)]
    } else {
        doubled_angle(k)
    }
}

fn tensor(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<((i64, i64), i64)> {
    let mut out = Vec::new();
    for (n, x) in a {
        for (m, y) in b {
            out.push(((*n, *m), x * y));
        }
    }
    out
}

/// Integer monomial expansion of a basis element.
pub(crate) fn basis_expansion(space: SpaceTag, (j, k): BasisIndex) -> IntExpansion {
    let single = |v: Vec<(i64, i64)>| v.into_iter().map(|(n, c)| ((n, 0), c)).collect();
    match space {
        SpaceTag::Angle => (2, single(doubled_angle(j))),
        SpaceTag::Bracket => (1, single(bracket(j))),
        SpaceTag::TwoVarAngle => (4, tensor(&doubled_angle(j), &doubled_angle(k))),
        SpaceTag::TwoVarBracket => (1, tensor(&bracket(j), &bracket(k))),
        SpaceTag::TwoVarMixed => match (j == 0, k == 0) {
            (true, true) => (1, vec![((0, 0), 1)]),
            (false, true) => (2, tensor(&doubled_angle(j), &[(0, 1)])),
            (true, false) => (2, tensor(&[(0, 1)], &doubled_angle(k))),
            (false, false) => (2, tensor(&bracket(j), &bracket(k))),
        },
    }
}

/// Coefficient of `Angle(k)` in a one-variable integer polynomial given by
/// `coeff`; needs no division.
fn angle_coordinate(k: i64, coeff: impl Fn(i64) -> i64) -> i64 {
    match k.signum() {
        0 => coeff(0),
        1 => coeff(k) + coeff(-k),
        _ => coeff(-k) - coeff(k),
    }
}

/// Angle-basis coordinates of an integer Laurent polynomial in `z, w`.
pub(crate) fn angle_coordinates(poly: &BTreeMap<(i64, i64), i64>) -> BTreeMap<BasisIndex, i64> {
    let zs: std::collections::BTreeSet<i64> = poly.keys().map(|(n, _)| n.abs()).collect();
    let ws: std::collections::BTreeSet<i64> = poly.keys().map(|(_, m)| m.abs()).collect();
    let get = |n: i64, m: i64| poly.get(&(n, m)).copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    for &a in &zs {
        for &b in &ws {
            for j in if a == 0 { vec![0] } else { vec![a, -a] } {
                for k in if b == 0 { vec![0] } else { vec![b, -b] } {
                    let v = angle_coordinate(j, |n| angle_coordinate(k, |m| get(n, m)));
                    if v != 0 {
                        out.insert((j, k), v);
                    }
                }
            }
        }
    }
    out
}

impl<R: Ring> SymmetrizedSeries<R> {
    pub fn zero(space: SpaceTag, proto: &R) -> Self {
        SymmetrizedSeries {
            space,
            proto: proto.zero_like(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(space: SpaceTag, proto: &R, terms: impl IntoIterator<Item = (BasisIndex, R)>) -> Result<Self> {
        let mut out = Self::zero(space, proto);
        for (idx, c) in terms {
            out.add_term(idx, &c)?;
        }
        Ok(out)
    }

    /// Same as [`from_terms`](Self::from_terms) with integer coefficients.
    pub fn from_ints(space: SpaceTag, proto: &R, terms: &[(BasisIndex, i64)]) -> Result<Self> {
        Self::from_terms(space, proto, terms.iter().map(|(i, c)| (*i, proto.from_int(*c))))
    }

    pub fn add_term(&mut self, idx: BasisIndex, c: &R) -> Result<()> {
        if !self.space.is_two_var() && idx.1 != 0 {
            return Err(Error::InvalidInput(format!(
                "index {idx:?} in the one-variable space {:?}",
                self.space
            )));
        }
        let next = match self.coeffs.get(&idx) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, next);
        }
        Ok(())
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    pub fn coeff(&self, idx: BasisIndex) -> R {
        self.coeffs.get(&idx).cloned().unwrap_or_else(|| self.proto.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisIndex, &R)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Parity per variable of a basis index: `true` for the odd part.
    pub fn parity((j, k): BasisIndex) -> (bool, bool) {
        (j < 0, k < 0)
    }

    /// `∫` (or `∬`): every basis element except the unit integrates to zero.
    pub fn integral(&self) -> R {
        self.coeff((0, 0))
    }

    /// Monomial expansion; needs `½` for the angle-type spaces.
    pub fn to_monomials(&self) -> Result<Bivariate<R>> {
        let mut out = Bivariate::zero(&self.proto);
        for (idx, c) in &self.coeffs {
            let (den, terms) = basis_expansion(self.space, *idx);
            let inv = self
                .proto
                .from_ratio(&BigRational::new(1.into(), den.into()))
                .ok_or(Error::MissingHalf)?;
            for (e, k) in terms {
                out.add_term(e, &c.mul(&self.proto.from_int(k)).mul(&inv));
            }
        }
        Ok(out)
    }

    /// `a(w, z)` for two-variable spaces.
    pub fn swapped(&self) -> Result<Self> {
        if !self.space.is_two_var() {
            return Err(Error::InvalidInput("swap needs a two-variable space".into()));
        }
        Self::from_terms(self.space, &self.proto, self.coeffs.iter().map(|((j, k), c)| ((*k, *j), c.clone())))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.space != other.space {
            return false;
        }
        let keys: std::collections::BTreeSet<_> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().all(|i| self.coeff(*i).approx_eq(&other.coeff(*i), tol))
    }
}

/// Monomials of a [`Bivariate`] with integer coefficients scaled by `den`,
/// read back in the angle basis. Fails unless every coordinate is divisible.
pub(crate) fn divide_coordinates(poly: &BTreeMap<(i64, i64), i64>, den: i64) -> Result<BTreeMap<BasisIndex, i64>> {
    angle_coordinates(poly)
        .into_iter()
        .map(|(i, v)| {
            if v % den == 0 {
                Ok((i, v / den))
            } else {
                Err(Error::InvalidInput(format!("coefficient {v}/{den} at {i:?} is not integral")))
            }
        })
        .collect()
}

/// `∫ a·b` for `a` in the angle space and `b` in the bracket space.
///
/// Even basis pairs contribute `a_k b_k`; odd pairs contribute `−a_k b_k`,
/// since `(zᵏ − z⁻ᵏ)/2 · (zᵏ − z⁻ᵏ)` has constant term `−1`.
pub fn integral_pairing<R: Ring>(a: &SymmetrizedSeries<R>, b: &SymmetrizedSeries<R>) -> Result<R> {
    if a.space != SpaceTag::Angle || b.space != SpaceTag::Bracket {
        return Err(Error::InvalidInput(format!(
            "pairing needs (angle, bracket), got ({:?}, {:?})",
            a.space, b.space
        )));
    }
    let mut acc = a.proto.zero_like();
    for (idx, x) in &a.coeffs {
        if let Some(y) = b.coeffs.get(idx) {
            let term = x.mul(y);
            acc = if idx.0 < 0 { acc.sub(&term) } else { acc.add(&term) };
        }
    }
    Ok(acc)
}

/// The map `b ↦ 1·b` from the bracket space into the angle space (and the
/// two-variable analogues), doubling each non-unit coordinate per variable.
pub fn bracket_to_angle<R: Ring>(b: &SymmetrizedSeries<R>) -> Result<SymmetrizedSeries<R>> {
    let target = match b.space {
        SpaceTag::Bracket => SpaceTag::Angle,
        SpaceTag::TwoVarBracket => SpaceTag::TwoVarAngle,
        other => return Err(Error::InvalidInput(format!("{other:?} is not a bracket space"))),
    };
    let mut out = SymmetrizedSeries::zero(target, &b.proto);
    for ((j, k), c) in &b.coeffs {
        let factor = 1i64 << ((*j != 0) as u32 + (*k != 0) as u32);
        out.add_term((*j, *k), &c.mul(&b.proto.from_int(factor)))?;
    }
    Ok(out)
}

/// Module action of a bracket-space element on an angle-space element
/// (one or two variables), `a·b` with coefficients multiplied as `a_i·b_j`.
pub fn module_action<R: Ring>(b: &SymmetrizedSeries<R>, a: &SymmetrizedSeries<R>) -> Result<SymmetrizedSeries<R>> {
    let ok = matches!(
        (b.space, a.space),
        (SpaceTag::Bracket, SpaceTag::Angle)
            | (SpaceTag::TwoVarBracket, SpaceTag::TwoVarAngle)
            | (SpaceTag::TwoVarBracket, SpaceTag::TwoVarMixed)
    );
    if !ok {
        return Err(Error::InvalidInput(format!(
            "no module action of {:?} on {:?}",
            b.space, a.space
        )));
    }
    let mut out = SymmetrizedSeries::zero(a.space, &a.proto);
    for (ia, x) in &a.coeffs {
        for (ib, y) in &b.coeffs {
            let c = x.mul(y);
            for (idx, k) in product_table(a.space, *ia, *ib)? {
                out.add_term(idx, &c.mul(&a.proto.from_int(k)))?;
            }
        }
    }
    Ok(out)
}

/// Coordinates of `basis_a · bracket_b` in the space of `basis_a`.
fn product_table(space: SpaceTag, ia: BasisIndex, ib: BasisIndex) -> Result<Vec<(BasisIndex, i64)>> {
    let (den, left) = basis_expansion(space, ia);
    let right_space = if space.is_two_var() {
        SpaceTag::TwoVarBracket
    } else {
        SpaceTag::Bracket
    };
    let (_, right) = basis_expansion(right_space, ib);
    let mut poly = BTreeMap::new();
    for ((n, m), x) in &left {
        for ((p, q), y) in &right {
            *poly.entry((n + p, m + q)).or_insert(0) += x * y;
        }
    }
    poly.retain(|_, v| *v != 0);
    if space == SpaceTag::TwoVarMixed {
        return mixed_coordinates(&poly, den);
    }
    Ok(divide_coordinates(&poly, den)?.into_iter().collect())
}

/// Mixed-basis coordinates of `poly / den`.
pub(crate) fn mixed_coordinates(poly: &BTreeMap<(i64, i64), i64>, den: i64) -> Result<Vec<(BasisIndex, i64)>> {
    // Angle coordinates are scaled by 4 relative to products of brackets:
    // Mixed(j,k) = 2·Angle(j)⊗Angle(k) when both indices are nonzero.
    let mut out = Vec::new();
    for ((j, k), v) in angle_coordinates(poly) {
        let scale = if j != 0 && k != 0 { 2 * den } else { den };
        if v % scale != 0 {
            return Err(Error::InvalidInput(format!(
                "product leaves the mixed space at {:?}",
                (j, k)
            )));
        }
        out.push(((j, k), v / scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zi() -> BigInt {
        BigInt::from(0)
    }

    #[test]
    fn expansion_round_trips_through_coordinates() {
        for space in [SpaceTag::Angle, SpaceTag::TwoVarAngle] {
            for j in -3..=3 {
                for k in if space.is_two_var() { -3..=3 } else { 0..=0 } {
                    let (den, terms) = basis_expansion(space, (j, k));
                    let poly: BTreeMap<_, _> = terms.into_iter().collect();
                    let coords = divide_coordinates(&poly, den).unwrap();
                    assert_eq!(coords.into_iter().collect::<Vec<_>>(), vec![((j, k), 1)]);
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a = SymmetrizedSeries::from_ints(SpaceTag::Angle, &zi(), &[((0, 0), 1), ((1, 0), 1)]).unwrap();
        let b = SymmetrizedSeries::from_ints(SpaceTag::Bracket, &zi(), &[((0, 0), 5), ((1, 0), 7)]).unwrap();
        assert_eq!(integral_pairing(&a, &b).unwrap(), BigInt::from(12));
        let a = SymmetrizedSeries::from_ints(SpaceTag::Angle, &zi(), &[((0, 0), 2), ((1, 0), 3)]).unwrap();
        assert_eq!(integral_pairing(&a, &b).unwrap(), BigInt::from(31));
        let zero = SymmetrizedSeries::zero(SpaceTag::Bracket, &zi());
        assert_eq!(integral_pairing(&a, &zero).unwrap(), BigInt::from(0));
        assert!(integral_pairing(&b, &a).is_err());
    }

    #[test]
    fn integral_of_bracket_equals_pairing_with_one() {
        let b = SymmetrizedSeries::from_ints(SpaceTag::Bracket, &zi(), &[((0, 0), 4), ((2, 0), 7), ((-1, 0), 3)]).unwrap();
        let one = SymmetrizedSeries::from_ints(SpaceTag::Angle, &zi(), &[((0, 0), 1)]).unwrap();
        assert_eq!(integral_pairing(&one, &b).unwrap(), b.integral());
    }

    #[test]
    fn embedding_doubles_nonunit_coordinates() {
        let b = SymmetrizedSeries::from_ints(SpaceTag::Bracket, &zi(), &[((0, 0), 5), ((1, 0), 7), ((-2, 0), 1)]).unwrap();
        let a = bracket_to_angle(&b).unwrap();
        assert_eq!(a.coeff((0, 0)), BigInt::from(5));
        assert_eq!(a.coeff((1, 0)), BigInt::from(14));
        assert_eq!(a.coeff((-2, 0)), BigInt::from(2));
    }

    #[test]
    fn action_respects_grading() {
        for j in -3..=3i64 {
            for k in -3..=3i64 {
                let a = SymmetrizedSeries::from_ints(SpaceTag::Angle, &zi(), &[((j, 0), 1)]).unwrap();
                let b = SymmetrizedSeries::from_ints(SpaceTag::Bracket, &zi(), &[((k, 0), 1)]).unwrap();
                let prod = module_action(&b, &a).unwrap();
                let parity = (j < 0) ^ (k < 0);
                assert!(prod.terms().all(|((i, _), _)| (i < 0) == parity), "{j} {k}");
            }
        }
    }

    #[test]
    fn one_variable_space_rejects_pairs() {
        let mut s = SymmetrizedSeries::zero(SpaceTag::Angle, &zi());
        assert!(s.add_term((1, 1), &BigInt::from(1)).is_err());
    }
}
