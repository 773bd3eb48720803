//! Transformation kernels in `t` and `z`, stored as exact coefficient tables.
//!
//! A table entry `(d, s)` is the coefficient of `t^d z^s`. Each z-column is
//! kept whole: the z-window is clamped so that no column loses t-degrees to
//! truncation, which keeps column sums (the `t ↗ 1` limit) exact.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::{invert_unit_pencil, transform_variable, LaurentSeries, Substitution};
use crate::ring::Ring;
use crate::{Error, Result};

pub const DEFAULT_T_MAX: u32 = 24;

type Q = BigRational;
/// Sparse coefficients keyed by `(t-degree, z-exponent)`.
type Grid = BTreeMap<(i64, i64), Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Poisson,
    HilbertPoisson,
    ShiftedOddPoisson,
    VariantRegularization,
    VariantHilbertPoisson,
    OrdinaryRegularization,
    /// Coefficients of `w^s z^{-s}`, stored at t-degree 0 under key `s`.
    HilbertTwoVar,
}

impl KernelKind {
    pub const ALL: [KernelKind; 7] = [
        KernelKind::Poisson,
        KernelKind::HilbertPoisson,
        KernelKind::ShiftedOddPoisson,
        KernelKind::VariantRegularization,
        KernelKind::VariantHilbertPoisson,
        KernelKind::OrdinaryRegularization,
        KernelKind::HilbertTwoVar,
    ];

    /// Uses `½` in its coefficients.
    pub fn needs_half(self) -> bool {
        matches!(self, KernelKind::VariantRegularization | KernelKind::VariantHilbertPoisson)
    }

    /// Largest z-window whose columns are complete at t-order `t_max`.
    fn whole_window(self, t_max: u32) -> i64 {
        let t = t_max as i64;
        match self {
            KernelKind::Poisson | KernelKind::HilbertPoisson | KernelKind::OrdinaryRegularization => t,
            KernelKind::ShiftedOddPoisson => t,
            KernelKind::VariantRegularization | KernelKind::VariantHilbertPoisson => (t - 1).max(0),
            KernelKind::HilbertTwoVar => i64::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelTable {
    pub kind: KernelKind,
    pub t_max: u32,
    pub window: i64,
    entries: Grid,
    /// Set when the t-series of a column is infinite and has been cut.
    pub caveat: bool,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn put(g: &mut Grid, key: (i64, i64), v: Q) {
    if Zero::is_zero(&v) {
        return;
    }
    let e = g.entry(key).or_insert_with(Q::zero);
    *e += v;
    if Zero::is_zero(e) {
        g.remove(&key);
    }
}

fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let mut out = Grid::new();
    for (&(d1, s1), x) in a {
        for (&(d2, s2), y) in b {
            put(&mut out, (d1 + d2, s1 + s2), x * y);
        }
    }
    out
}

fn grid(terms: &[((i64, i64), Q)]) -> Grid {
    let mut g = Grid::new();
    for (k, v) in terms {
        put(&mut g, *k, v.clone());
    }
    g
}

fn poisson_grid(t_max: i64, window: i64, sign: bool) -> Grid {
    let mut g = Grid::new();
    for s in -window..=window {
        if s.abs() <= t_max {
            let v = if sign { q(s.signum(), 1) } else { Q::one() };
            put(&mut g, (s.abs(), s), v);
        }
    }
    g
}

/// Coefficient table of a kernel with t-degrees `0..=t_max` and z-exponents
/// `|s| ≤ z_window` (clamped to keep columns whole).
pub fn kernel_coefficients(kind: KernelKind, t_max: u32, z_window: i64) -> KernelTable {
    let window = z_window.max(0).min(kind.whole_window(t_max));
    let t = t_max as i64;
    let mut entries = Grid::new();
    let mut caveat = false;
    match kind {
        KernelKind::Poisson => entries = poisson_grid(t, window, false),
        KernelKind::HilbertPoisson => entries = poisson_grid(t, window, true),
        KernelKind::ShiftedOddPoisson => {
            for d in 0..=t {
                if d <= window {
                    put(&mut entries, (d, -d), Q::one());
                }
                if d < window {
                    put(&mut entries, (d, d + 1), Q::one());
                }
            }
        }
        KernelKind::VariantRegularization => {
            put(&mut entries, (1, 0), Q::one());
            for s in 1..=window {
                for e in [s, -s] {
                    put(&mut entries, (s + 1, e), q(1, 2));
                    put(&mut entries, (s, e), q(-1, 2));
                }
            }
        }
        KernelKind::VariantHilbertPoisson => {
            for s in 1..=window {
                for e in [s, -s] {
                    put(&mut entries, (s, e), q(e.signum(), 2));
                    put(&mut entries, (s + 1, e), q(e.signum(), 2));
                }
            }
        }
        KernelKind::OrdinaryRegularization => {
            caveat = true;
            // t(2 − z − z⁻¹) · Σ_j t^{2j} · 𝒫(t, z), cut at t^{t_max}.
            let front = grid(&[((1, 0), q(2, 1)), ((1, 1), q(-1, 1)), ((1, -1), q(-1, 1))]);
            let even: Grid = (0..=t / 2).map(|j| ((2 * j, 0), Q::one())).collect();
            let prod = grid_mul(&grid_mul(&front, &even), &poisson_grid(t, window + 1, false));
            entries = prod
                .into_iter()
                .filter(|&((d, s), _)| d <= t && s.abs() <= window)
                .collect();
        }
        KernelKind::HilbertTwoVar => {
            for s in -z_window.max(0)..=z_window.max(0) {
                put(&mut entries, (0, s), q(s.signum(), 1));
            }
            return KernelTable {
                kind,
                t_max: 0,
                window: z_window.max(0),
                entries,
                caveat,
            };
        }
    }
    KernelTable {
        kind,
        t_max,
        window,
        entries,
        caveat,
    }
}

impl KernelTable {
    pub fn coefficient(&self, t_degree: i64, z_exp: i64) -> Q {
        self.entries.get(&(t_degree, z_exp)).cloned().unwrap_or_else(Q::zero)
    }

    /// For the two-variable Hilbert kernel: coefficient of `w^a z^b`.
    pub fn two_var_coefficient(&self, w_exp: i64, z_exp: i64) -> Q {
        if w_exp + z_exp != 0 {
            return Q::zero();
        }
        self.coefficient(0, w_exp)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &Q)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Entries mapped into a ring; kernels with `½` need a ring that has it.
    pub fn to_ring<R: Ring>(&self, proto: &R) -> Result<BTreeMap<(i64, i64), R>> {
        if self.kind.needs_half() && proto.half().is_none() {
            return Err(Error::MissingHalf);
        }
        self.entries
            .iter()
            .map(|(k, v)| proto.from_ratio(v).map(|r| (*k, r)).ok_or(Error::MissingHalf))
            .collect()
    }

    /// The z-series of a fixed t-degree.
    pub fn row(&self, t_degree: i64) -> LaurentSeries<Q> {
        LaurentSeries::from_coeffs(
            &Q::zero(),
            self.entries
                .iter()
                .filter(|((d, _), _)| *d == t_degree)
                .map(|((_, s), v)| (*s, v.clone())),
        )
    }
}

/// `Σ_d t^d Σ_s k_{d,s} b_{−s}`, returned as a series in `t`.
pub fn apply_kernel<R: Ring>(k: &KernelTable, b: &LaurentSeries<R>) -> Result<LaurentSeries<R>> {
    let entries = k.to_ring(b.proto())?;
    let mut by_degree: BTreeMap<i64, R> = BTreeMap::new();
    for ((d, s), c) in entries {
        let term = c.mul(&b.coeff(-s));
        by_degree
            .entry(d)
            .and_modify(|acc| *acc = acc.add(&term))
            .or_insert(term);
    }
    Ok(LaurentSeries::from_coeffs(b.proto(), by_degree))
}

/// Column sums over the t-degrees.
pub fn kernel_limit_t1(k: &KernelTable) -> LaurentSeries<Q> {
    let mut cols: BTreeMap<i64, Q> = BTreeMap::new();
    for ((_, s), v) in k.entries() {
        *cols.entry(s).or_insert_with(Q::zero) += v;
    }
    LaurentSeries::from_coeffs(&Q::zero(), cols).with_window(-k.window, k.window)
}

/// Numerator `N(t, z)` with `K · (1−tz)(1−tz⁻¹) = N`, for kernels with a
/// rational closed form.
fn closed_form_numerator(kind: KernelKind) -> Option<Grid> {
    let h = q(1, 2);
    Some(match kind {
        KernelKind::Poisson => grid(&[((0, 0), Q::one()), ((2, 0), q(-1, 1))]),
        KernelKind::HilbertPoisson => grid(&[((1, 1), Q::one()), ((1, -1), q(-1, 1))]),
        KernelKind::ShiftedOddPoisson => grid(&[
            ((0, 0), Q::one()),
            ((0, 1), Q::one()),
            ((1, 0), q(-1, 1)),
            ((1, 1), q(-1, 1)),
        ]),
        // (1+t)t(2 − z − z⁻¹)/2
        KernelKind::VariantRegularization => grid(&[
            ((1, 0), Q::one()),
            ((1, 1), -h.clone()),
            ((1, -1), -h.clone()),
            ((2, 0), Q::one()),
            ((2, 1), -h.clone()),
            ((2, -1), -h.clone()),
        ]),
        // (1+t)t(z − z⁻¹)/2
        KernelKind::VariantHilbertPoisson => grid(&[
            ((1, 1), h.clone()),
            ((1, -1), -h.clone()),
            ((2, 1), h.clone()),
            ((2, -1), -h),
        ]),
        KernelKind::OrdinaryRegularization => grid(&[((1, 0), q(2, 1)), ((1, 1), q(-1, 1)), ((1, -1), q(-1, 1))]),
        KernelKind::HilbertTwoVar => return None,
    })
}

/// Checks `(1−tz)(1−tz⁻¹)·K = N` on the interior `|s| ≤ window−1`,
/// `d ≤ t_max`. Returns `None` for kernels without a closed form here.
pub fn closed_form_check(k: &KernelTable) -> Option<bool> {
    let numerator = closed_form_numerator(k.kind)?;
    let denom = grid(&[
        ((0, 0), Q::one()),
        ((1, 1), q(-1, 1)),
        ((1, -1), q(-1, 1)),
        ((2, 0), Q::one()),
    ]);
    let prod = grid_mul(&denom, &k.entries);
    let t = k.t_max as i64;
    let w = k.window - 1;
    let inside = |d: i64, s: i64| d <= t && s.abs() <= w;
    let keys: std::collections::BTreeSet<(i64, i64)> = prod
        .keys()
        .chain(numerator.keys())
        .copied()
        .filter(|&(d, s)| inside(d, s))
        .collect();
    Some(keys.into_iter().all(|key| {
        prod.get(&key).cloned().unwrap_or_else(Q::zero) == numerator.get(&key).cloned().unwrap_or_else(Q::zero)
    }))
}

/// `ℋ̃ = ((1+t)/2)·ℋ` coefficient-wise on whole columns.
pub fn variant_hilbert_factor_check(t_max: u32) -> bool {
    let hv = kernel_coefficients(KernelKind::VariantHilbertPoisson, t_max, t_max as i64);
    let h = kernel_coefficients(KernelKind::HilbertPoisson, t_max, hv.window);
    let factor = grid(&[((0, 0), q(1, 2)), ((1, 0), q(1, 2))]);
    let prod = grid_mul(&factor, &h.entries);
    let trimmed: Grid = prod.into_iter().filter(|((_, s), _)| s.abs() <= hv.window).collect();
    trimmed == hv.entries
}

/// One-sided expansion of `1/Λ(z, q) = 1/(a + b z)` with `a = (1+q)/2`,
/// `b = (1−q)/2`; the z side is tried before the z⁻¹ side.
pub fn inverse_lambda_series(x: &Q, m: usize) -> Result<LaurentSeries<Q>> {
    let a = (Q::one() + x) / q(2, 1);
    let b = (Q::one() - x) / q(2, 1);
    if !Zero::is_zero(&a) && (&b / &a).abs() < Q::one() {
        let s = invert_unit_pencil(&(&b / &a), m)?;
        return Ok(s.scale_left(&a.recip()));
    }
    if !Zero::is_zero(&b) && (&a / &b).abs() < Q::one() {
        let s = transform_variable(&invert_unit_pencil(&(&a / &b), m)?, Substitution::InvertZ);
        return Ok(s.mul(&LaurentSeries::monomial(b.recip(), -1)));
    }
    Err(Error::ClassViolation(format!("Λ(z, {x}) has no one-sided inverse")))
}

/// `Λ(−z, q)/Λ(z, q)` as a one-sided series.
pub fn sign_ratio_series(x: &Q, m: usize) -> Result<LaurentSeries<Q>> {
    let a = (Q::one() + x) / q(2, 1);
    let b = (Q::one() - x) / q(2, 1);
    let num = LaurentSeries::from_coeffs(&Q::zero(), vec![(0, a), (1, -b)]);
    let inv = inverse_lambda_series(x, m)?;
    let (lo, hi) = degree_one_window(&inv);
    Ok(trim(num.mul(&inv), lo, hi))
}

/// Exponents where `(c₀ + c₁z)·inv` is unaffected by the truncation of `inv`.
fn degree_one_window(inv: &LaurentSeries<Q>) -> (i64, i64) {
    let (lo, hi) = inv.window();
    if lo >= 0 {
        (lo, hi)
    } else {
        (lo + 1, hi + 1)
    }
}

fn trim(p: LaurentSeries<Q>, lo: i64, hi: i64) -> LaurentSeries<Q> {
    let class = p.class();
    let coeffs: Vec<(i64, Q)> = p.terms().filter(|(n, _)| *n >= lo && *n <= hi).map(|(n, c)| (n, c.clone())).collect();
    LaurentSeries::from_coeffs(&Q::zero(), coeffs).with_window(lo, hi).with_class(class)
}

#[derive(Clone, Debug)]
pub struct ResolventReport {
    /// `Σ_s r̃_{d,s}(δ_{s0} − r_s r_{−s})` per t-degree `d`.
    pub regularized_route: LaurentSeries<Q>,
    /// `Σ_s h̃_{d,s}[g(z) − g(w)]_{z^s w^{−s}}` per t-degree.
    pub hilbert_route: LaurentSeries<Q>,
    /// `(z−w)(1 − r(z)r(w)) = (z+w)(g(z) − g(w))` on the reliable window.
    pub integrand_identity: bool,
}

impl ResolventReport {
    pub fn passed(&self) -> bool {
        self.integrand_identity && self.regularized_route.is_zero() && self.hilbert_route.is_zero()
    }
}

type Grid2 = BTreeMap<(i64, i64), Q>;

fn mul2(a: &Grid2, b: &Grid2) -> Grid2 {
    grid_mul(a, b)
}

/// The double-integral pipeline for a scalar rational `q`: the regularized
/// route through `ℛ̃(t, wz⁻¹)` and the Hilbert route through `ℋ̃(t, wz⁻¹)`
/// must both vanish in every t-degree.
pub fn resolvent_analytic(x: &Q, t_max: u32, m: usize) -> Result<ResolventReport> {
    let r = sign_ratio_series(x, m)?;
    let inv = inverse_lambda_series(x, m)?;
    let (lo, hi) = degree_one_window(&inv);
    // g(z) = (z−1)(1−q²)/(2Λ(z,q))
    let scale = (Q::one() - x * x) / q(2, 1);
    let g = trim(
        LaurentSeries::from_coeffs(&Q::zero(), vec![(0, -scale.clone()), (1, scale)]).mul(&inv),
        lo,
        hi,
    );

    // Keys are (z-exponent, w-exponent).
    let mut rr = Grid2::new();
    put(&mut rr, (0, 0), Q::one());
    for (i, a) in r.terms() {
        for (j, b) in r.terms() {
            put(&mut rr, (i, j), -(a * b));
        }
    }
    let mut gg = Grid2::new();
    for (i, a) in g.terms() {
        put(&mut gg, (i, 0), a.clone());
        put(&mut gg, (0, i), -a.clone());
    }

    let z_minus_w = grid(&[((1, 0), Q::one()), ((0, 1), q(-1, 1))]);
    let z_plus_w = grid(&[((1, 0), Q::one()), ((0, 1), Q::one())]);
    let lhs = mul2(&z_minus_w, &rr);
    let rhs = mul2(&z_plus_w, &gg);
    let (rlo, rhi) = (lo + 1, hi - 1);
    let ok = |(i, j): (i64, i64)| (i == 0 || (rlo..=rhi).contains(&i)) && (j == 0 || (rlo..=rhi).contains(&j));
    let keys: std::collections::BTreeSet<(i64, i64)> =
        lhs.keys().chain(rhs.keys()).copied().filter(|&k| ok(k)).collect();
    let integrand_identity = keys.into_iter().all(|k| {
        lhs.get(&k).cloned().unwrap_or_else(Q::zero) == rhs.get(&k).cloned().unwrap_or_else(Q::zero)
    });

    let window = t_max as i64;
    let rt = kernel_coefficients(KernelKind::VariantRegularization, t_max, window);
    let ht = kernel_coefficients(KernelKind::VariantHilbertPoisson, t_max, window);
    // ∬ k(t, wz⁻¹) f(z, w) picks the coefficient of z^s w^{−s} of f.
    let route = |k: &KernelTable, f: &Grid2| {
        let mut by_degree: BTreeMap<i64, Q> = BTreeMap::new();
        for ((d, s), c) in k.entries() {
            if let Some(v) = f.get(&(s, -s)) {
                *by_degree.entry(d).or_insert_with(Q::zero) += c * v;
            }
        }
        LaurentSeries::from_coeffs(&Q::zero(), by_degree)
    };
    Ok(ResolventReport {
        regularized_route: route(&rt, &rr),
        hilbert_route: route(&ht, &gg),
        integrand_identity,
    })
}
