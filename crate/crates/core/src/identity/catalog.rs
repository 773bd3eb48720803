use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use serde::Serialize;

use super::poly::{Frac, MultiPoly, Relations, Var};
use crate::laurent::lambda;
use crate::ring::Ring;
use crate::{Error, Result};

/// Coefficients of the four-argument Λ, times 4, indexed by the mask whose
/// bit `k` selects the `k`-th argument.
pub type Lambda4 = [i64; 16];

/// `4·Λ(a,b,c,d) = 1 + a + b + c + d − ab − bc − cd + ac + ad + bd + abc − acd
/// − abd + bcd − abcd`.
pub const LAMBDA4_EXPANSION: Lambda4 = [1, 1, 1, -1, 1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentitySet {
    Sign,
    Sqrt,
    Idem,
    Fsqrt,
    Homotopy,
    All,
}

impl FromStr for IdentitySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sign" => IdentitySet::Sign,
            "sqrt" => IdentitySet::Sqrt,
            "idem" => IdentitySet::Idem,
            "fsqrt" => IdentitySet::Fsqrt,
            "homotopy" => IdentitySet::Homotopy,
            "all" => IdentitySet::All,
            other => return Err(Error::InvalidInput(format!("unknown identity set {other:?}"))),
        })
    }
}

/// One equality `lhs = rhs` between quotients of polynomials.
#[derive(Clone, Debug)]
pub struct Equality {
    pub label: String,
    pub lhs: Frac,
    pub rhs: Frac,
}

/// A catalog entry: a named group of equalities that are checked by cross
/// multiplication, `num_l·den_r = num_r·den_l`.
pub struct Entry {
    pub name: &'static str,
    pub set: IdentitySet,
    /// What the identity states.
    pub anchor: &'static str,
    /// The multiplier that clears the denominators.
    pub clearing: &'static str,
    build: fn(&Lambda4) -> Vec<Equality>,
}

impl Entry {
    pub fn equalities(&self, table: &Lambda4) -> Vec<Equality> {
        (self.build)(table)
    }
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entry").field("name", &self.name).field("set", &self.set).finish()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: &'static str,
    pub set: IdentitySet,
    pub verified: bool,
    pub equalities: usize,
    /// Coefficients outside the integers were needed.
    pub uses_half: bool,
    /// Label and canonical form of the first non-zero residual.
    pub residual: Option<(String, String)>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Checks every equality of `entry` with the standard Λ expansion.
pub fn verify_identity(entry: &Entry) -> Report {
    verify_identity_with(entry, &LAMBDA4_EXPANSION)
}

/// Same as [`verify_identity`] with a substituted four-argument Λ table.
pub fn verify_identity_with(entry: &Entry, table: &Lambda4) -> Report {
    let start = Instant::now();
    let eqs = entry.equalities(table);
    let mut residual = None;
    let mut uses_half = false;
    for eq in &eqs {
        uses_half |= eq.lhs.has_fractions() || eq.rhs.has_fractions();
        let r = eq.lhs.cross_residual(&eq.rhs);
        if !r.is_zero() && residual.is_none() {
            residual = Some((eq.label.clone(), r.to_string()));
        }
    }
    Report {
        name: entry.name,
        set: entry.set,
        verified: residual.is_none(),
        equalities: eqs.len(),
        uses_half,
        residual,
        elapsed: start.elapsed(),
    }
}

/// Entries belonging to `set`.
pub fn entries(set: IdentitySet) -> impl Iterator<Item = &'static Entry> {
    CATALOG.iter().filter(move |e| set == IdentitySet::All || e.set == set)
}

pub fn entry(name: &str) -> Option<&'static Entry> {
    CATALOG.iter().find(|e| e.name == name)
}

// ---------------------------------------------------------------------------
// building blocks

fn v(x: Var) -> MultiPoly {
    MultiPoly::var(x)
}

fn inv(x: Var) -> MultiPoly {
    MultiPoly::monomial(x, -1)
}

fn int(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

fn half() -> MultiPoly {
    MultiPoly::ratio(1, 2)
}

fn fr(p: MultiPoly) -> Frac {
    Frac::poly(p)
}

fn q(n: MultiPoly, d: MultiPoly) -> Frac {
    Frac::new(n, d)
}

/// Λ of any arity; four arguments go through `table`.
fn lam(args: &[MultiPoly], table: &Lambda4) -> MultiPoly {
    if args.len() == 4 {
        let mut acc = MultiPoly::zero();
        for (mask, c) in table.iter().enumerate() {
            let mut term = MultiPoly::int(*c);
            for (k, a) in args.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    term = term.mul(a);
                }
            }
            acc = acc.add(&term);
        }
        return acc.scale(&BigRational::new(1.into(), 4.into()));
    }
    lambda(args).expect("polynomial coefficients contain ½")
}

/// `Λ(a, x)` for a quotient `x = n/d`, as `((d+n) + (d−n)a)/2 ÷ d`.
fn lam2_frac(a: &MultiPoly, x: &Frac) -> Frac {
    let (n, d) = (&x.num, &x.den);
    q(d.add(n).add(&d.sub(n).mul(a)).mul(&half()), d.clone())
}

fn eq(label: impl Into<String>, lhs: Frac, rhs: Frac) -> Equality {
    Equality {
        label: label.into(),
        lhs,
        rhs,
    }
}

fn subs(f: &Frac, pairs: &[(Var, MultiPoly)]) -> Frac {
    let mut out = f.clone();
    for (x, by) in pairs {
        out = Frac::new(
            out.num.subs(*x, by).expect("monomial substitution"),
            out.den.subs(*x, by).expect("monomial substitution"),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// sign

fn sign_key(t: &Lambda4) -> Vec<Equality> {
    let (z, w, qq) = (v(Var::Z), v(Var::W), v(Var::Q));
    let lz = lam(&[z.clone(), qq.clone()], t);
    let lw = lam(&[w.clone(), qq.clone()], t);
    let lmz = lam(&[z.neg(), qq.clone()], t);
    let lmw = lam(&[w.neg(), qq.clone()], t);
    let gap = int(1).sub(&qq.mul(&qq));
    let both = lz.mul(&lw);
    let left = fr(int(1)).sub(&q(lmz.mul(&lmw), both.clone()));
    let middle = q(z.add(&w).mul(&half()).mul(&gap), both.clone());
    // the kernel factor ½[(z+w)/(z−w)] is common to the last two forms
    let kernel = q(z.add(&w).mul(&half()), z.sub(&w));
    let split = q(z.sub(&int(1)).mul(&gap), lz.clone()).sub(&q(w.sub(&int(1)).mul(&gap), lw.clone()));
    vec![
        eq("product form", fr(both.sub(&lmz.mul(&lmw))), fr(z.add(&w).mul(&half()).mul(&gap))),
        eq("ratio form", left, middle.clone()),
        eq("kernel form", middle.clone(), kernel.mul(&q(z.sub(&w).mul(&gap), both))),
        eq("split form", middle, kernel.mul(&split)),
    ]
}

fn lambda_neg(t: &Lambda4) -> Vec<Equality> {
    let (z, qq) = (v(Var::Z), v(Var::Q));
    vec![eq(
        "Λ(z,−Q) = zΛ(z⁻¹,Q)",
        fr(lam(&[z.clone(), qq.neg()], t)),
        fr(z.mul(&lam(&[inv(Var::Z), qq], t))),
    )]
}

fn lambda_inv(t: &Lambda4) -> Vec<Equality> {
    let rel = Relations::Q_INVERSE;
    let z = v(Var::Z).with_relations(rel);
    let (qq, qi) = (v(Var::Q).with_relations(rel), v(Var::Qinv).with_relations(rel));
    let lhs = lam(&[z.clone(), qi.clone()], t);
    let rhs = qi.mul(&lam(&[z.neg(), qq.clone()], t));
    // the sign integrand of Q⁻¹ is the reflected reciprocal of that of Q
    let ratio_inv = q(lam(&[z.neg(), qi.clone()], t), lam(&[z.clone(), qi], t));
    let reflected = q(lam(&[z.clone(), qq.clone()], t), lam(&[z.neg(), qq.clone()], t));
    let neg_ratio = q(lam(&[z.neg(), qq.neg()], t), lam(&[z.clone(), qq.neg()], t));
    let zi = inv(Var::Z);
    let flipped = q(lam(&[zi.neg(), qq.clone()], t), lam(&[zi, qq], t)).neg();
    vec![
        eq("Λ(z,Q⁻¹) = Q⁻¹Λ(−z,Q)", fr(lhs), fr(rhs)),
        eq("inverse integrand", ratio_inv, reflected),
        eq("negated integrand", neg_ratio, flipped),
    ]
}

fn resolvent_recurrence(_: &Lambda4) -> Vec<Equality> {
    let qq = v(Var::Q);
    let (plus, minus) = (int(1).add(&qq), int(1).sub(&qq));
    // a_n = 2(Q−1)ⁿ/(Q+1)ⁿ⁺¹ for n ≥ 0, a₋₁ = 0
    let a = |n: i64| -> Frac {
        if n < 0 {
            fr(int(0))
        } else {
            q(int(2).mul(&qq.sub(&int(1)).pow(n as u32)), plus.pow(n as u32 + 1))
        }
    };
    let mut out = Vec::new();
    for n in 0..=6 {
        let lhs = fr(minus.mul(&half())).mul(&a(n - 1)).add(&fr(plus.mul(&half())).mul(&a(n)));
        out.push(eq(format!("recurrence n={n}"), lhs, fr(int((n == 0) as i64))));
    }
    // b_n, the coefficients of Λ(−z,Q)/Λ(z,Q) = ((1+Q) − (1−Q)z)/2 · Σ aₙzⁿ
    for n in 0..=6 {
        let b = fr(plus.mul(&half())).mul(&a(n)).sub(&fr(minus.mul(&half())).mul(&a(n - 1)));
        let expected = if n == 0 {
            fr(int(1))
        } else {
            q(int(2).mul(&qq.sub(&int(1)).pow(n as u32)), plus.pow(n as u32))
        };
        out.push(eq(format!("ratio coefficient n={n}"), b, expected));
    }
    out.push(eq("(1+z)/2 integral", fr(half()).mul(&a(0).add(&a(-1))), q(int(1), plus)));
    out
}

// ---------------------------------------------------------------------------
// square root

fn sym(x: &MultiPoly, s: &MultiPoly, t: &Lambda4) -> MultiPoly {
    let xi = x.try_invert().expect("monomial");
    lam(&[x.clone(), s.clone(), xi], t)
}

fn root_pieces(t: &Lambda4) -> (MultiPoly, MultiPoly, MultiPoly, MultiPoly, MultiPoly, MultiPoly) {
    let rel = Relations::S_INVERSE;
    let (z, w, s) = (v(Var::Z).with_relations(rel), v(Var::W).with_relations(rel), v(Var::S).with_relations(rel));
    let lz = sym(&z, &s, t);
    let lw = sym(&w, &s, t);
    (z, w, s, lz, lw, int(1).with_relations(rel))
}

fn root_split(t: &Lambda4) -> Vec<Equality> {
    let (z, w, s, lz, lw, one) = root_pieces(t);
    let (zi, wi) = (z.try_invert().unwrap(), w.try_invert().unwrap());
    let inner = lam(&[z.clone(), s.clone(), zi.clone(), one.clone(), w.clone(), s.clone(), wi.clone()], t);
    let outer = lam(&[z, s.clone(), zi, one, wi, s.clone(), w], t);
    let den = int(2).mul(&lz).mul(&lw);
    let lhs = q(s.clone(), lz.clone()).mul(&q(s.clone(), lw.clone())).sub(&fr(s.clone()));
    let rhs = q(s.mul(&s.sub(&inner)), den.clone()).add(&q(s.mul(&s.sub(&outer)), den));
    vec![eq("split into two kernels", lhs, rhs)]
}

fn root_kernel(t: &Lambda4, outer: bool) -> Vec<Equality> {
    let (z, w, s, lz, lw, one) = root_pieces(t);
    let (zi, wi) = (z.try_invert().unwrap(), w.try_invert().unwrap());
    let (a, b) = if outer { (wi.clone(), w.clone()) } else { (w.clone(), wi.clone()) };
    let l7 = lam(&[z.clone(), s.clone(), zi.clone(), one.clone(), a, s.clone(), b], t);
    let lhs = q(s.sub(&l7), int(2).mul(&lz).mul(&lw));
    let x = if outer { z.mul(&w) } else { z.mul(&wi) };
    let kernel = q(x.add(&one).mul(&half()), x.sub(&one));
    let rz = q(lam(&[z.neg(), s.clone(), zi.clone()], t), lz);
    let rw = if outer {
        q(lam(&[w.clone(), s.clone(), wi.neg()], t), lw)
    } else {
        q(lam(&[w.neg(), s.clone(), wi], t), lw)
    };
    vec![eq(if outer { "zw kernel" } else { "zw⁻¹ kernel" }, lhs, kernel.mul(&rz.sub(&rw)))]
}

fn root_kernel_inner(t: &Lambda4) -> Vec<Equality> {
    root_kernel(t, false)
}

fn root_kernel_outer(t: &Lambda4) -> Vec<Equality> {
    root_kernel(t, true)
}

fn lambda_sinv(t: &Lambda4) -> Vec<Equality> {
    let (z, _, s, _, _, one) = root_pieces(t);
    let si = v(Var::Sinv).with_relations(Relations::S_INVERSE);
    let lhs = q(one, sym(&z, &si, t));
    let rhs = q(s, sym(&z.neg(), &v(Var::S), t));
    vec![eq("1/Λ(z,S⁻¹,z⁻¹) = S/Λ(−z,S,(−z)⁻¹)", lhs, rhs)]
}

fn square_factor(t: &Lambda4) -> Vec<Equality> {
    let (z, qq) = (v(Var::Z), v(Var::Q));
    vec![eq(
        "Λ(z,Q²,z⁻¹) = Λ(z,Q)Λ(z⁻¹,Q)",
        fr(sym(&z, &qq.mul(&qq), t)),
        fr(lam(&[z, qq.clone()], t).mul(&lam(&[inv(Var::Z), qq], t))),
    )]
}

fn rootsign_avg(t: &Lambda4) -> Vec<Equality> {
    let (z, zi, qq) = (v(Var::Z), inv(Var::Z), v(Var::Q));
    let ratio = |x: &MultiPoly| q(lam(&[x.neg(), qq.clone()], t), lam(&[x.clone(), qq.clone()], t));
    let lhs = fr(half()).mul(&ratio(&z).add(&ratio(&zi)));
    vec![eq("averaged sign integrand", lhs, q(qq.clone(), sym(&z, &qq.mul(&qq), t)))]
}

// ---------------------------------------------------------------------------
// idempotent and ᶠ-square-root

fn idem_cross(_: &Lambda4) -> Vec<Equality> {
    let (z, w, p) = (v(Var::Z), v(Var::W), v(Var::P));
    let pq = p.mul(&int(1).sub(&p));
    let d = |x: &MultiPoly| int(1).sub(&p).add(&p.mul(x));
    let (dz, dw) = (d(&z), d(&w));
    let sym_form = q(z.add(&w).mul(&half()).mul(&pq), dz.mul(&dw));
    let kernel = q(z.add(&w).mul(&half()), z.sub(&w));
    let split = q(z.sub(&int(1)).mul(&pq), dz).sub(&q(w.sub(&int(1)).mul(&pq), dw));
    vec![eq("split form", sym_form, kernel.mul(&split))]
}

fn idem_shift(_: &Lambda4) -> Vec<Equality> {
    let (z, zi, p) = (v(Var::Z), inv(Var::Z), v(Var::P));
    let one = int(1);
    let comp = one.sub(&p);
    let gap = one.sub(&p.add(&p));
    let moved = q(p.neg(), gap.clone());
    let one_f = fr(one.clone());
    let pencil = |x: &Frac, y: &MultiPoly| one_f.sub(x).add(&x.mul(&fr(y.clone())));
    vec![
        eq("reflection", fr(p.add(&comp.mul(&z))), fr(comp.add(&p.mul(&zi)).mul(&z))),
        eq(
            "moved pencil",
            pencil(&moved, &z),
            q(comp.add(&p.mul(&z.neg())), gap.clone()),
        ),
        eq(
            "reflected integrand",
            q(p.mul(&z), comp.add(&p.mul(&z))),
            one_f.sub(&q(comp.mul(&zi), p.add(&comp.mul(&zi)))),
        ),
        eq(
            "moved integrand",
            moved.mul(&fr(z.clone())).div(&pencil(&moved, &z)),
            q(p.mul(&z.neg()), comp.add(&p.mul(&z.neg()))),
        ),
    ]
}

fn fact_p(_: &Lambda4) -> Vec<Equality> {
    let (z, zi, p) = (v(Var::Z), inv(Var::Z), v(Var::P));
    let pq = p.mul(&int(1).sub(&p));
    let lhs = int(1).add(&z.sub(&int(2)).add(&zi).mul(&pq));
    let rhs = int(1).sub(&p).add(&p.mul(&z)).mul(&int(1).sub(&p).add(&p.mul(&zi)));
    vec![eq("pencil factorization", fr(lhs), fr(rhs))]
}

fn cosine(x: &MultiPoly) -> MultiPoly {
    x.add(&x.try_invert().unwrap()).mul(&half())
}

fn sine(x: &MultiPoly) -> MultiPoly {
    x.sub(&x.try_invert().unwrap()).mul(&half())
}

/// `1 + (x − 2 + x⁻¹)T`
fn fpencil(x: &MultiPoly, tt: &MultiPoly) -> MultiPoly {
    int(1).add(&x.sub(&int(2)).add(&x.try_invert().unwrap()).mul(tt))
}

fn fsqrt_cross(_: &Lambda4) -> Vec<Equality> {
    let (z, w, tt) = (v(Var::Z), v(Var::W), v(Var::T));
    let one = int(1);
    let (cz, cw, sz, sw) = (cosine(&z), cosine(&w), sine(&z), sine(&w));
    let (dz, dw) = (fpencil(&z, &tt), fpencil(&w, &tt));
    let den = dz.mul(&dw);
    let scale = tt.mul(&one.sub(&tt.mul(&int(4))));
    let gap = one.sub(&tt.mul(&int(2)));
    let fz = q(one.add(&cz).mul(&tt), dz.clone());
    let fw = q(one.add(&cw).mul(&tt), dw.clone());
    let start = fz.mul(&fr(one.clone()).sub(&fw)).sub(&fr(tt.clone()));
    let expanded = cz.sub(&cz.mul(&tt)).sub(&cw.mul(&tt)).add(&tt).add(&cz.mul(&cw).mul(&tt));
    let cross = z.mul(&inv(Var::W)).sub(&inv(Var::Z).mul(&w));
    let mixed = one.add(&inv(Var::Z).mul(&w).add(&z.mul(&inv(Var::W))).mul(&half()));
    let sym_form = cz.add(&cw).mul(&half()).mul(&gap).add(&mixed.mul(&tt));
    let kernel = q(z.add(&w).mul(&half()), z.sub(&w));
    let odd_form = sz.sub(&sw).mul(&gap).add(&cross.mul(&tt));
    let split = q(sz, dz).sub(&q(sw, dw));
    let unscaled = q(odd_form.clone(), den.clone());
    vec![
        eq("expanded numerator", start, q(expanded.mul(&scale), den.clone())),
        eq("kernel form", q(sym_form.mul(&scale), den.clone()), kernel.mul(&q(odd_form.mul(&scale), den))),
        eq("split form", unscaled, split),
    ]
}

fn fsqrt_shift(_: &Lambda4) -> Vec<Equality> {
    let (z, tt) = (v(Var::Z), v(Var::T));
    let one = int(1);
    let gap = one.sub(&tt.mul(&int(4)));
    let moved = q(tt.neg(), gap.clone());
    let zs = z.add(&z.try_invert().unwrap()).sub(&int(2));
    let pencil_moved = fr(one.clone()).add(&fr(zs).mul(&moved));
    let mz = z.neg();
    let lhs = fr(one.add(&cosine(&z))).mul(&moved).div(&pencil_moved);
    let reflected = q(one.add(&cosine(&mz)).mul(&tt), fpencil(&mz, &tt));
    let rhs = reflected.sub(&fr(tt.mul(&int(2)))).div(&fr(gap.clone()));
    vec![
        eq("moved pencil", pencil_moved.clone(), q(fpencil(&mz, &tt), gap)),
        eq("moved integrand", lhs, rhs),
    ]
}

fn fsqrt_decomp(_: &Lambda4) -> Vec<Equality> {
    let (z, p) = (v(Var::Z), v(Var::P));
    let one = int(1);
    let pq = p.mul(&one.sub(&p));
    let gap = one.sub(&p.add(&p));
    let d = fpencil(&z, &pq);
    let lhs = q(one.add(&cosine(&z)).mul(&pq), d.clone()).add(&q(sine(&z).mul(&pq).mul(&gap), d));
    let rhs = fr(p.clone()).add(&q(p.mul(&z).mul(&gap), one.sub(&p).add(&p.mul(&z))));
    vec![eq("integrand decomposition", lhs, rhs)]
}

// ---------------------------------------------------------------------------
// homotopies; F stands for sgn Q, R for |Q|_r, with F² = 1 and Q = RF

fn hom_vars() -> (MultiPoly, MultiPoly, MultiPoly, MultiPoly, MultiPoly) {
    let rel = Relations::F_INVOLUTION;
    let f = v(Var::F).with_relations(rel);
    let r = v(Var::R).with_relations(rel);
    (v(Var::Time).with_relations(rel), v(Var::Z).with_relations(rel), f.clone(), r.clone(), r.mul(&f))
}

fn branches(f: &MultiPoly, plus: Frac, minus: Frac) -> Frac {
    let one = f.one_like();
    fr(one.add(f).mul(&half())).mul(&plus).add(&fr(one.sub(f).mul(&half())).mul(&minus))
}

fn kh_closed(tb: &Lambda4) -> Vec<Equality> {
    let (t, z, f, r, qq) = hom_vars();
    let zi = z.try_invert().unwrap();
    let l2 = |a: &MultiPoly| lam(&[a.clone(), r.clone()], tb);
    let lt = l2(&t);
    let k_def = branches(&f, q(l2(&t.mul(&z)), lt.clone()), q(z.mul(&l2(&t.mul(&zi))), lt.clone()));
    let h_def = branches(&f, q(lt.clone(), l2(&t.mul(&z))), q(zi.mul(&lt), l2(&t.mul(&zi))));
    let k_closed = q(lam(&[z.clone(), f.clone(), t.clone(), r.clone()], tb), lt.clone());
    let k_alt = lam2_frac(&z, &q(l2(&t.neg()).mul(&f), lt.clone()));
    let h_closed = q(
        lt.mul(&lam(&[zi.clone(), f.clone(), t.clone(), r.clone()], tb)),
        l2(&t.mul(&z)).mul(&l2(&t.mul(&zi))),
    );
    let at = |tv: i64, zv: i64| subs(&k_closed, &[(Var::Time, int(tv)), (Var::Z, int(zv))]);
    let k_t1 = subs(&k_closed, &[(Var::Z, int(1))]);
    vec![
        eq("K definition", k_def.clone(), k_closed.clone()),
        eq("K as a two-term Λ", k_closed.clone(), k_alt),
        eq("H definition", h_def.clone(), h_closed),
        eq("K·H = 1", k_def.mul(&h_def), fr(int(1))),
        eq("K(t,1) = 1", k_t1, fr(int(1))),
        eq("K(1,−1) = Q", at(1, -1), fr(qq.clone())),
        eq("K(0,−1) = sgn Q", at(0, -1), fr(f.clone())),
        eq("K(−1,−1) = Q⁻¹", at(-1, -1), q(f.one_like(), qq)),
    ]
}

fn lg_closed(tb: &Lambda4) -> Vec<Equality> {
    let (t, z, f, r, qq) = hom_vars();
    let zi = z.try_invert().unwrap();
    let l2 = |a: &MultiPoly| lam(&[a.clone(), r.clone()], tb);
    let l_def = branches(&f, fr(l2(&t.mul(&z))), fr(z.mul(&l2(&t.mul(&zi)))));
    let g_def = branches(&f, q(int(1), l2(&t.mul(&z))), q(zi.clone(), l2(&t.mul(&zi))));
    let l_closed = fr(lam(&[z.clone(), f.clone(), t.clone(), r.clone()], tb));
    let l_swapped = fr(lam(&[t.clone(), f.clone(), z.clone(), qq.clone()], tb));
    let g_closed = q(
        lam(&[zi.clone(), f.clone(), t.clone(), r.clone()], tb),
        l2(&t.mul(&z)).mul(&l2(&t.mul(&zi))),
    );
    let at = |tv: i64, zv: i64| subs(&l_closed, &[(Var::Time, int(tv)), (Var::Z, int(zv))]);
    vec![
        eq("L definition", l_def.clone(), l_closed.clone()),
        eq("L with arguments swapped", l_closed.clone(), l_swapped),
        eq("G definition", g_def.clone(), g_closed),
        eq("L·G = 1", l_def.mul(&g_def), fr(int(1))),
        eq("L(t,1) = Λ(t,|Q|)", subs(&l_closed, &[(Var::Z, int(1))]), fr(l2(&t))),
        eq("L(1,−1) = Q", at(1, -1), fr(qq.clone())),
        eq("L(0,−1) = (Q + sgn Q)/2", at(0, -1), fr(qq.add(&f).mul(&half()))),
        eq("L(−1,−1) = sgn Q", at(-1, -1), fr(f.clone())),
    ]
}

// ---------------------------------------------------------------------------

pub static CATALOG: &[Entry] = &[
    Entry {
        name: "sign_key",
        set: IdentitySet::Sign,
        anchor: "1 − Λ(−z,Q)Λ(−w,Q)/(Λ(z,Q)Λ(w,Q)) = ((z+w)/2)(1−Q²)/(Λ(z,Q)Λ(w,Q)), then its kernel and split forms",
        clearing: "2·Λ(z,Q)Λ(w,Q)·(z−w)",
        build: sign_key,
    },
    Entry {
        name: "lambda_neg",
        set: IdentitySet::Sign,
        anchor: "Λ(z,−Q) = zΛ(z⁻¹,Q)",
        clearing: "z",
        build: lambda_neg,
    },
    Entry {
        name: "lambda_inv",
        set: IdentitySet::Sign,
        anchor: "Λ(z,Q⁻¹) = Q⁻¹Λ(−z,Q), and the sign integrands of Q⁻¹ and −Q",
        clearing: "Q·Λ(±z,Q)Λ(±z,Q⁻¹)",
        build: lambda_inv,
    },
    Entry {
        name: "resolvent_recurrence",
        set: IdentitySet::Sign,
        anchor: "coefficients aₙ = 2(Q−1)ⁿ/(Q+1)ⁿ⁺¹ of 1/Λ(z,Q) solve (1−Q)/2·aₙ₋₁ + (1+Q)/2·aₙ = δ₀ₙ, n = 0..6",
        clearing: "2(1+Q)ⁿ⁺¹",
        build: resolvent_recurrence,
    },
    Entry {
        name: "root_split",
        set: IdentitySet::Sqrt,
        anchor: "S/Λ(z,S,z⁻¹)·S/Λ(w,S,w⁻¹) − S as the sum of the two seven-argument Λ terms",
        clearing: "2·Λ(z,S,z⁻¹)Λ(w,S,w⁻¹)·(zw)ᵏ",
        build: root_split,
    },
    Entry {
        name: "root_kernel_inner",
        set: IdentitySet::Sqrt,
        anchor: "first seven-argument term as ½[(zw⁻¹+1)/(zw⁻¹−1)] times a difference of sign-type ratios",
        clearing: "2·Λ(z,S,z⁻¹)Λ(w,S,w⁻¹)·(zw⁻¹−1)·(zw)ᵏ",
        build: root_kernel_inner,
    },
    Entry {
        name: "root_kernel_outer",
        set: IdentitySet::Sqrt,
        anchor: "second seven-argument term as ½[(zw+1)/(zw−1)] times a difference of sign-type ratios",
        clearing: "2·Λ(z,S,z⁻¹)Λ(w,S,w⁻¹)·(zw−1)·(zw)ᵏ",
        build: root_kernel_outer,
    },
    Entry {
        name: "lambda_sinv",
        set: IdentitySet::Sqrt,
        anchor: "1/Λ(z,S⁻¹,z⁻¹) = S/Λ(−z,S,(−z)⁻¹)",
        clearing: "Λ(z,S⁻¹,z⁻¹)Λ(−z,S,(−z)⁻¹)",
        build: lambda_sinv,
    },
    Entry {
        name: "square_factor",
        set: IdentitySet::Sqrt,
        anchor: "Λ(z,Q²,z⁻¹) = Λ(z,Q)Λ(z⁻¹,Q)",
        clearing: "z",
        build: square_factor,
    },
    Entry {
        name: "rootsign_avg",
        set: IdentitySet::Sqrt,
        anchor: "½(Λ(−z,Q)/Λ(z,Q) + Λ(−z⁻¹,Q)/Λ(z⁻¹,Q)) = Q/Λ(z,Q²,z⁻¹)",
        clearing: "2·Λ(z,Q)Λ(z⁻¹,Q)",
        build: rootsign_avg,
    },
    Entry {
        name: "idem_cross",
        set: IdentitySet::Idem,
        anchor: "((z+w)/2)P(1−P)/((1−P+Pz)(1−P+Pw)) as ½[(z+w)/(z−w)] times a difference of one-variable terms",
        clearing: "2(z−w)(1−P+Pz)(1−P+Pw)",
        build: idem_cross,
    },
    Entry {
        name: "idem_shift",
        set: IdentitySet::Idem,
        anchor: "P + (1−P)z = ((1−P) + Pz⁻¹)z and the substitution P ↦ −P(1−2P)⁻¹",
        clearing: "z·(1−2P)·(1−P+Pz)",
        build: idem_shift,
    },
    Entry {
        name: "fact_p",
        set: IdentitySet::Idem,
        anchor: "1 + (z−2+z⁻¹)P(1−P) = (1−P+Pz)(1−P+Pz⁻¹)",
        clearing: "z",
        build: fact_p,
    },
    Entry {
        name: "fsqrt_cross",
        set: IdentitySet::Fsqrt,
        anchor: "the ᶠ-square-root double integrand, its symmetrized numerator and the final split",
        clearing: "4zw(z−w)(1+(z−2+z⁻¹)T)(1+(w−2+w⁻¹)T)",
        build: fsqrt_cross,
    },
    Entry {
        name: "fsqrt_shift",
        set: IdentitySet::Fsqrt,
        anchor: "1 + (z−2+z⁻¹)·(−T/(1−4T)) = (1−4T)⁻¹(1 + ((−z)−2+(−z)⁻¹)T) and the moved integrand",
        clearing: "(1−4T)",
        build: fsqrt_shift,
    },
    Entry {
        name: "fsqrt_decomp",
        set: IdentitySet::Fsqrt,
        anchor: "the ᶠ-square-root integrand of P(1−P) plus an odd term equals P + Pz(1−2P)/(1−P+Pz)",
        clearing: "2z(1+(z−2+z⁻¹)P(1−P))(1−P+Pz)",
        build: fsqrt_decomp,
    },
    Entry {
        name: "kh_closed",
        set: IdentitySet::Homotopy,
        anchor: "K(t,z,Q) = Λ(z,sgn Q,t,|Q|)/Λ(t,|Q|), H its inverse, and the special values",
        clearing: "Λ(t,|Q|)Λ(tz,|Q|)Λ(tz⁻¹,|Q|)",
        build: kh_closed,
    },
    Entry {
        name: "lg_closed",
        set: IdentitySet::Homotopy,
        anchor: "L(t,z,Q) = Λ(z,sgn Q,t,|Q|) = Λ(t,sgn Q,z,Q), G its inverse, and the special values",
        clearing: "Λ(tz,|Q|)Λ(tz⁻¹,|Q|)",
        build: lg_closed,
    },
];
