//! Spectral integrals and the functions derived from them.
//!
//! Every function here is the `z⁰` coefficient of `N(z)·Π(z)⁻¹` for a Laurent
//! polynomial pencil `Π` and numerator `N` built from the argument. Backends
//! differ only in how that coefficient is extracted.

mod class;
mod derived;
mod homotopy;
mod integrand;
mod oracle;
pub(crate) mod quadrature;
pub(crate) mod series_backend;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ring::{Ring, DEFAULT_TOLERANCE};
use crate::{Error, Result};

pub use class::{class_membership, Certificate, CertificateStatus};
pub use derived::{
    aux_integral, derived_decomposition, pencil_inverse_expansion, spectral_split, AuxKind, DecompositionKind,
    ExpansionVariant, SplitResult,
};
pub use homotopy::{
    contraction_eval, contraction_poisson_check, contraction_with_root, geometric_mean, homotopy_eval, sqrt_real_segment, HomotopyKind,
};
pub use integrand::SpectralFn;
pub use quadrature::{node, Summation};

/// Pencil margins below this count as singular.
pub const MIN_MARGIN: f64 = 1e-10;

pub const DEFAULT_NODES: usize = 64;
pub const DEFAULT_ORDER: usize = 32;

#[derive(Clone, Debug)]
pub enum Backend<R> {
    /// Equal-weight rule on the `N`-th roots of unity.
    Quadrature { nodes: usize, summation: Summation },
    /// One-sided geometric expansion of a degree-one pencil.
    SeriesCayley { order: usize, tail_tolerance: f64 },
    /// `V·f(D)·V⁻¹` from caller-supplied eigen-data.
    Oracle { v: R, eigenvalues: Vec<Complex64> },
}

impl<R: Ring> Backend<R> {
    pub fn quadrature(nodes: usize) -> Self {
        Backend::Quadrature {
            nodes,
            summation: Summation::Sequential,
        }
    }

    pub fn series(order: usize) -> Self {
        Backend::SeriesCayley {
            order,
            tail_tolerance: crate::laurent::FLOAT_DECAY_THRESHOLD,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Quadrature { .. } => "quadrature",
            Backend::SeriesCayley { .. } => "series",
            Backend::Oracle { .. } => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClassMode {
    /// Reject inputs whose pencil margin falls below [`MIN_MARGIN`].
    #[default]
    Certify,
    /// Skip certification; results are flagged as unverified.
    Assert,
}

#[derive(Clone, Debug)]
pub struct SpectralResult<R> {
    pub value: R,
    pub residuals: BTreeMap<String, f64>,
    pub error_budget: f64,
    pub backend: &'static str,
    pub unverified_class: bool,
    /// Smallest pencil margin seen, where the backend measures one.
    pub margin: Option<f64>,
}

impl<R: Ring> SpectralResult<R> {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.get(name).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralClassTag {
    AvoidImagAxis,
    AvoidLeftHalf,
    AvoidNegReals,
    AvoidShiftedImagAxis,
    AvoidShiftedLeftHalf,
    AvoidQuarterShiftedNegReals,
    DiskComplementAvoided,
    AvoidRealAxis,
    Involution,
    SkewInvolution,
    Idempotent,
}

pub(crate) fn half_of<R: Ring>(x: &R) -> Result<R> {
    x.half().ok_or(Error::MissingHalf)
}

pub(crate) fn invert<R: Ring>(x: &R, what: &str) -> Result<R> {
    x.try_invert().ok_or_else(|| Error::NotInvertible(what.to_string()))
}

fn tolerance<R: Ring>(x: &R) -> f64 {
    if x.is_exact() {
        0.0
    } else {
        DEFAULT_TOLERANCE
    }
}

/// Evaluate `f(x)` on the chosen backend.
pub fn spectral_integral<R: Ring>(f: SpectralFn, x: &R, backend: &Backend<R>, mode: ClassMode) -> Result<SpectralResult<R>> {
    let (value, budget, margin) = match backend {
        Backend::Quadrature { nodes, summation } => {
            let (pencil, numerator) = integrand::pencil_and_numerator(f, x)?;
            let q = quadrature::node_mean(&pencil, &numerator, *nodes, *summation, mode)?;
            (q.value, q.alias_estimate + tolerance(x), Some(q.margin))
        }
        Backend::SeriesCayley { order, .. } => {
            let (pencil, numerator) = integrand::pencil_and_numerator(f, x)?;
            let v = series_backend::series_mean(f, &pencil, &numerator, *order)?;
            (v, tolerance(x), None)
        }
        Backend::Oracle { v, eigenvalues } => {
            let (value, margin) = oracle::oracle_value(f, x, v, eigenvalues, mode)?;
            (value, tolerance(x), Some(margin))
        }
    };
    let residuals = integrand::residuals(f, x, &value)?;
    Ok(SpectralResult {
        value,
        residuals,
        error_budget: budget,
        backend: backend.name(),
        unverified_class: mode == ClassMode::Assert,
        margin,
    })
}

pub fn sgn<R: Ring>(q: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    spectral_integral(SpectralFn::Sgn, q, backend, ClassMode::Certify)
}

pub fn sqrt_spec<R: Ring>(s: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    spectral_integral(SpectralFn::Sqrt, s, backend, ClassMode::Certify)
}

pub fn idem_spec<R: Ring>(p: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    spectral_integral(SpectralFn::Idem, p, backend, ClassMode::Certify)
}

pub fn fsqrt_spec<R: Ring>(t: &R, backend: &Backend<R>) -> Result<SpectralResult<R>> {
    spectral_integral(SpectralFn::Fsqrt, t, backend, ClassMode::Certify)
}
