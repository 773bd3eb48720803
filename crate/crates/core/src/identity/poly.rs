use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::Ring;
use crate::{Error, Result};

/// Commuting indeterminates available to the checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    W,
    /// Lowercase `t`, the homotopy parameter.
    Time,
    Q,
    Qinv,
    S,
    Sinv,
    P,
    /// Uppercase `T`, the argument of the ᶠ-square-root.
    T,
    X,
    /// Stand-in for `sgn Q`.
    F,
    /// Stand-in for `|Q|_r`.
    R,
}

pub const VARS: [Var; 12] = [
    Var::Z,
    Var::W,
    Var::Time,
    Var::Q,
    Var::Qinv,
    Var::S,
    Var::Sinv,
    Var::P,
    Var::T,
    Var::X,
    Var::F,
    Var::R,
];

const NVARS: usize = VARS.len();

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Time => "t",
            Var::Q => "Q",
            Var::Qinv => "Qinv",
            Var::S => "S",
            Var::Sinv => "Sinv",
            Var::P => "P",
            Var::T => "T",
            Var::X => "X",
            Var::F => "F",
            Var::R => "R",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Relations applied during canonicalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Relations(u8);

impl Relations {
    pub const NONE: Relations = Relations(0);
    /// `Q·Qinv = 1`
    pub const Q_INVERSE: Relations = Relations(1);
    /// `S·Sinv = 1`
    pub const S_INVERSE: Relations = Relations(2);
    /// `F² = 1`
    pub const F_INVOLUTION: Relations = Relations(4);

    pub fn union(self, other: Relations) -> Relations {
        Relations(self.0 | other.0)
    }

    pub fn contains(self, other: Relations) -> bool {
        self.0 & other.0 == other.0
    }
}

pub type Exponents = [i32; NVARS];

/// Sparse Laurent polynomial in the checker's indeterminates with exact
/// rational coefficients, kept in canonical form.
#[derive(Clone)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigRational>,
    relations: Relations,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            relations: Relations::NONE,
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, [0; NVARS])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(BigRational::new(n.into(), d.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(v, 1)
    }

    /// `v^k`, negative `k` allowed.
    pub fn monomial(v: Var, k: i32) -> Self {
        let mut e = [0; NVARS];
        e[v.slot()] = k;
        Self::term(BigRational::one(), e)
    }

    fn term(c: BigRational, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(e, c);
        }
        MultiPoly {
            terms,
            relations: Relations::NONE,
        }
    }

    pub fn with_relations(mut self, r: Relations) -> Self {
        self.relations = self.relations.union(r);
        self.canonicalize();
        self
    }

    pub fn relations(&self) -> Relations {
        self.relations
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some coefficient is not an integer.
    pub fn has_fractions(&self) -> bool {
        self.terms.values().any(|c| !c.is_integer())
    }

    fn reduce(&self, mut e: Exponents) -> Exponents {
        let r = self.relations;
        if r.contains(Relations::Q_INVERSE) {
            e[Var::Q.slot()] -= e[Var::Qinv.slot()];
            e[Var::Qinv.slot()] = 0;
        }
        if r.contains(Relations::S_INVERSE) {
            e[Var::S.slot()] -= e[Var::Sinv.slot()];
            e[Var::Sinv.slot()] = 0;
        }
        if r.contains(Relations::F_INVOLUTION) {
            e[Var::F.slot()] = e[Var::F.slot()].rem_euclid(2);
        }
        e
    }

    fn canonicalize(&mut self) {
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            self.push(e, c);
        }
    }

    fn push(&mut self, e: Exponents, c: BigRational) {
        let e = self.reduce(e);
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&e);
        }
    }

    fn joined(&self, other: &Self) -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            relations: self.relations.union(other.relations),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.joined(self);
        for (e, x) in &self.terms {
            out.push(*e, x * c);
        }
        out
    }

    /// Replaces `v` by `by`. Negative powers of `v` need `by` to be a single
    /// term, whose inverse is then exact.
    pub fn subs(&self, v: Var, by: &MultiPoly) -> Result<Self> {
        let inverse = if self.terms.keys().any(|e| e[v.slot()] < 0) {
            Some(by.try_invert().ok_or_else(|| {
                Error::InvalidInput(format!("negative power of {} needs a monomial replacement", v.name()))
            })?)
        } else {
            None
        };
        let mut out = self.joined(by);
        for (e, c) in &self.terms {
            let k = e[v.slot()];
            let mut rest = *e;
            rest[v.slot()] = 0;
            let base = if k >= 0 { by } else { inverse.as_ref().expect("checked above") };
            let factor = base.pow(k.unsigned_abs());
            let mut head = Self::term(c.clone(), rest);
            head.relations = out.relations;
            out = out.add(&head.mul(&factor));
        }
        Ok(out)
    }
}

/// Compares canonical forms; the relation sets are not compared.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        self.joined(self)
    }

    fn one_like(&self) -> Self {
        Self::int(1).with_relations(self.relations)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.joined(rhs);
        for (e, c) in self.terms.iter().chain(&rhs.terms) {
            out.push(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.joined(rhs);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut e = *a;
                for (l, r) in e.iter_mut().zip(b) {
                    *l += r;
                }
                out.push(e, x * y);
            }
        }
        out
    }

    fn half(&self) -> Option<Self> {
        Some(Self::ratio(1, 2).with_relations(self.relations))
    }

    /// Only single terms are inverted.
    fn try_invert(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut out = self.joined(self);
        out.push(e.map(|k| -k), c.recip());
        Some(out)
    }

    /// Sum of absolute coefficients.
    fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_ratio(&self, r: &BigRational) -> Option<Self> {
        Some(Self::constant(r.clone()).with_relations(self.relations))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, k) in VARS.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    _ => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            if factors.is_empty() || !c.is_one() {
                factors.insert(0, c.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// A quotient `num / den`, combined without ever dividing.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Frac {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        Frac { num, den }
    }

    pub fn poly(p: MultiPoly) -> Self {
        let den = p.one_like();
        Frac { num: p, den }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(self.num.add(&o.num), self.den.clone());
        }
        Frac::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac::new(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Frac) -> Frac {
        Frac::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn recip(&self) -> Frac {
        Frac::new(self.den.clone(), self.num.clone())
    }

    /// `num_l·den_r − num_r·den_l`, zero exactly when the quotients agree.
    pub fn cross_residual(&self, o: &Frac) -> MultiPoly {
        self.num.mul(&o.den).sub(&o.num.mul(&self.den))
    }

    pub fn has_fractions(&self) -> bool {
        self.num.has_fractions() || self.den.has_fractions()
    }
}

impl From<MultiPoly> for Frac {
    fn from(p: MultiPoly) -> Self {
        Frac::poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn inverse_relation_cancels() {
        let q = v(Var::Q).with_relations(Relations::Q_INVERSE);
        let qi = v(Var::Qinv).with_relations(Relations::Q_INVERSE);
        assert_eq!(q.mul(&qi), MultiPoly::int(1));
        let free = v(Var::Q).mul(&v(Var::Qinv));
        assert_ne!(free, MultiPoly::int(1));
    }

    #[test]
    fn involution_relation() {
        let f = v(Var::F).with_relations(Relations::F_INVOLUTION);
        let one = MultiPoly::int(1);
        assert_eq!(f.mul(&f), one);
        assert_eq!(one.add(&f).mul(&one.sub(&f)), MultiPoly::zero());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let z = v(Var::Z);
        let p = z.add(&MultiPoly::int(1)).mul(&z.sub(&MultiPoly::int(1)));
        assert_eq!(p.len(), 2);
        assert_eq!(p.sub(&p).len(), 0);
    }

    #[test]
    fn substitution_with_negative_powers() {
        let z = v(Var::Z);
        let p = z.add(&MultiPoly::monomial(Var::Z, -1));
        let minus_z = p.subs(Var::Z, &z.neg()).unwrap();
        assert_eq!(minus_z, p.neg());
        assert!(p.subs(Var::Z, &z.add(&MultiPoly::int(1))).is_err());
        let at_minus_one = p.subs(Var::Z, &MultiPoly::int(-1)).unwrap();
        assert_eq!(at_minus_one, MultiPoly::int(-2));
    }

    #[test]
    fn display_is_readable() {
        let p = v(Var::Z).scale(&BigRational::new(1.into(), 2.into())).sub(&MultiPoly::int(3));
        assert_eq!(p.to_string(), "-3 + 1/2*z");
    }
}
