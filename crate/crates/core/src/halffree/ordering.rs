use std::collections::BTreeMap;

use super::basis::{BasisIndex, Bivariate, SpaceTag, SymmetrizedSeries};
use crate::ring::{Ring, DEFAULT_TOLERANCE};
use crate::{Error, Result};

fn is_null<R: Ring>(x: &R) -> bool {
    if x.is_exact() {
        x.is_zero()
    } else {
        x.norm() <= DEFAULT_TOLERANCE
    }
}

/// `:zⁿwᵐ: = z^max(n,m) w^min(n,m)`, extended linearly.
pub fn normal_order_single<R: Ring>(a: &Bivariate<R>) -> Bivariate<R> {
    Bivariate::from_terms(a.proto(), a.terms().map(|((n, m), c)| ((n.max(m), n.min(m)), c.clone())))
}

/// Index of `dⁿₘ = ::zⁿwᵐ::` in the two-variable angle space.
fn d_index(n: i64, m: i64) -> BasisIndex {
    let (a, b) = (n.abs(), m.abs());
    (a.max(b), a.min(b))
}

/// `::zⁿwᵐ:: = dⁿₘ` on monomial data; the result lives in the two-variable
/// angle space on indices `n ≥ m ≥ 0`.
pub fn normal_order_double_monomials<R: Ring>(a: &Bivariate<R>) -> SymmetrizedSeries<R> {
    let mut out = SymmetrizedSeries::zero(SpaceTag::TwoVarAngle, a.proto());
    for ((n, m), c) in a.terms() {
        out.add_term(d_index(n, m), c).expect("two-variable index");
    }
    out
}

/// Double normal ordering on a two-variable symmetrized series: keeps the
/// `(+,+)` part and sorts the orders, returning `dⁿₘ` coordinates.
pub fn normal_order_double<R: Ring>(a: &SymmetrizedSeries<R>) -> Result<SymmetrizedSeries<R>> {
    let space = a.space();
    if !space.is_two_var() {
        return Err(Error::InvalidInput(format!("{space:?} is a one-variable space")));
    }
    let proto = a.proto();
    let mut out = SymmetrizedSeries::zero(SpaceTag::TwoVarAngle, proto);
    for ((j, k), c) in a.terms() {
        if j < 0 || k < 0 {
            continue;
        }
        let nonunit = (j != 0) as u32 + (k != 0) as u32;
        let factor = match space {
            SpaceTag::TwoVarAngle => 1,
            SpaceTag::TwoVarBracket => 1 << nonunit,
            _ => {
                if nonunit == 2 {
                    2
                } else {
                    1
                }
            }
        };
        out.add_term(d_index(j, k), &c.mul(&proto.from_int(factor)))?;
    }
    Ok(out)
}

/// `(z + w)(zᵃwᵇ − zᵇwᵃ)/(z − w)` for `a > b`, as integer monomials.
fn doubled_hilbert(a: i64, b: i64) -> Vec<((i64, i64), i64)> {
    let k = a - b;
    let mut out = Vec::with_capacity(2 * k as usize);
    for i in 0..k {
        out.push(((b + i + 1, b + k - 1 - i), 1));
        out.push(((b + i, b + k - i), 1));
    }
    out
}

/// `P(a,b) = zᵃwᵇ − zᵇwᵃ` pushed through `(z+w)/(z−w)`, any order of `a, b`.
fn signed_doubled_hilbert(a: i64, b: i64, sign: i64) -> Vec<((i64, i64), i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => doubled_hilbert(a, b).into_iter().map(|(e, c)| (e, sign * c)).collect(),
        std::cmp::Ordering::Less => doubled_hilbert(b, a).into_iter().map(|(e, c)| (e, -sign * c)).collect(),
        std::cmp::Ordering::Equal => Vec::new(),
    }
}

fn halve(map: BTreeMap<(i64, i64), i64>, den: i64, what: &str) -> Result<Vec<((i64, i64), i64)>> {
    let mut out = Vec::new();
    for (e, v) in map {
        if v == 0 {
            continue;
        }
        if v % den != 0 {
            return Err(Error::InvalidInput(format!("{what}: coefficient {v}/{den} at {e:?} is not integral")));
        }
        out.push((e, v / den));
    }
    Ok(out)
}

/// `:½[(z+w)/(z−w)](zⁿwᵐ − zᵐwⁿ):` for `n > m`, as integer monomials.
pub fn hilbert_single_table(n: i64, m: i64) -> Result<Vec<((i64, i64), i64)>> {
    if n <= m {
        return Err(Error::InvalidInput(format!("need n > m, got ({n}, {m})")));
    }
    let mut acc = BTreeMap::new();
    for ((x, y), c) in doubled_hilbert(n, m) {
        *acc.entry((x.max(y), x.min(y))).or_insert(0) += c;
    }
    halve(acc, 2, "single Hilbert product")
}

/// Coefficients `a_{nm}` (`n > m`) of an antisymmetric two-variable series
/// `Σ a_{nm}(zⁿwᵐ − zᵐwⁿ)`.
fn antisymmetric_pairs<R: Ring>(a: &Bivariate<R>) -> Result<Vec<((i64, i64), R)>> {
    let mut out = Vec::new();
    for ((n, m), c) in a.terms() {
        if n == m {
            if !is_null(c) {
                return Err(Error::InvalidInput(format!("diagonal coefficient at z^{n}w^{n}")));
            }
            continue;
        }
        if !is_null(&c.add(&a.coeff(m, n))) {
            return Err(Error::InvalidInput(format!("not antisymmetric at ({n}, {m})")));
        }
        if n > m {
            out.push(((n, m), c.clone()));
        }
    }
    Ok(out)
}

/// `:½[(z+w)/(z−w)] a:` for antisymmetric `a` with zero diagonal; only
/// integer multiples of the coefficients of `a` appear.
pub fn hilbert_product_single<R: Ring>(a: &Bivariate<R>) -> Result<Bivariate<R>> {
    let proto = a.proto();
    let mut out = Bivariate::zero(proto);
    for ((n, m), c) in antisymmetric_pairs(a)? {
        for (e, k) in hilbert_single_table(n, m)? {
            out.add_term(e, &c.mul(&proto.from_int(k)));
        }
    }
    Ok(out)
}

/// Antisymmetric basis element `c_{n,m}` of the mixed space (`m = 0` allowed),
/// as mixed-basis coordinates.
pub fn c_basis_element(n: i64, m: i64) -> Result<Vec<(BasisIndex, i64)>> {
    if n < 1 || m < 0 {
        return Err(Error::InvalidInput(format!("c_{{{n},{m}}} needs n ≥ 1, m ≥ 0")));
    }
    Ok(vec![((-n, m), 1), ((m, -n), -1)])
}

/// Coordinates of an antisymmetric odd element of the mixed space in the
/// `c_{n,m}` basis.
pub fn c_basis_coordinates<R: Ring>(c: &SymmetrizedSeries<R>) -> Result<BTreeMap<(i64, i64), R>> {
    match c.space() {
        SpaceTag::TwoVarMixed => {}
        SpaceTag::TwoVarAngle => {
            return Err(Error::InvalidInput(
                "angle-space input: the Hilbert product would not be integral".into(),
            ))
        }
        other => return Err(Error::InvalidInput(format!("{other:?} input, expected the mixed space"))),
    }
    let mut out = BTreeMap::new();
    for ((j, k), x) in c.terms() {
        if (j < 0) == (k < 0) {
            return Err(Error::InvalidInput(format!("index ({j}, {k}) is not odd-graded")));
        }
        if !is_null(&x.add(&c.coeff((k, j)))) {
            return Err(Error::InvalidInput(format!("not antisymmetric at ({j}, {k})")));
        }
        if j < 0 {
            out.insert((-j, k), x.clone());
        }
    }
    Ok(out)
}

/// `::½[(z+w)/(z−w)] c_{n,m}::` in `dⁿₘ` coordinates.
pub fn hilbert_double_table(n: i64, m: i64) -> Result<Vec<(BasisIndex, i64)>> {
    c_basis_element(n, m)?;
    // 2·c_{n,0} = P(n,0) + P(0,−n);
    // 2·c_{n,m} = P(n,m) + P(n,−m) − P(−n,m) − P(−n,−m), P(a,b) = zᵃwᵇ − zᵇwᵃ.
    let pieces: Vec<(i64, i64, i64)> = if m == 0 {
        vec![(n, 0, 1), (0, -n, 1)]
    } else {
        vec![(n, m, 1), (n, -m, 1), (-n, m, -1), (-n, -m, -1)]
    };
    let mut acc = BTreeMap::new();
    for (a, b, s) in pieces {
        for ((x, y), c) in signed_doubled_hilbert(a, b, s) {
            *acc.entry(d_index(x, y)).or_insert(0) += c;
        }
    }
    halve(acc, 4, "double Hilbert product")
}

/// `::½[(z+w)/(z−w)] c::` for an antisymmetric element of the mixed space.
pub fn hilbert_product_double<R: Ring>(c: &SymmetrizedSeries<R>) -> Result<SymmetrizedSeries<R>> {
    let proto = c.proto();
    let mut out = SymmetrizedSeries::zero(SpaceTag::TwoVarAngle, proto);
    for ((n, m), x) in c_basis_coordinates(c)? {
        for (idx, k) in hilbert_double_table(n, m)? {
            out.add_term(idx, &x.mul(&proto.from_int(k)))?;
        }
    }
    Ok(out)
}
