use std::path::PathBuf;

use clap::ValueEnum;
use formal_spectral::fixture::{self, Fixture};
use formal_spectral::ring::json::{parse_matrix_json, MatrixValue};
use formal_spectral::spectral::{
    derived_decomposition, geometric_mean, spectral_integral, spectral_split, sqrt_real_segment, Backend, ClassMode,
    DecompositionKind, SpectralFn, SpectralResult, Summation,
};
use formal_spectral::{Error, Matrix, Ring};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::{read_file, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Func {
    Sgn,
    Sqrt,
    Idem,
    Fsqrt,
    Absr,
    Absi,
    Pol,
    #[value(name = "absF")]
    AbsF,
    Pertr,
    Split,
    Geomean,
    SqrtSegment,
}

impl Func {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    fn arity(self) -> usize {
        if self == Func::Geomean {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Quadrature,
    Series,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct Job {
    pub func: Func,
    pub inputs: Vec<PathBuf>,
    pub sidecar: Option<PathBuf>,
    pub backend: BackendKind,
    pub nodes: usize,
    pub order: usize,
    pub tol: f64,
    pub verify: bool,
}

/// Matrices that can be written back as matrix JSON.
pub trait Emit: Ring {
    fn to_value(&self) -> MatrixValue;
}

impl Emit for Matrix<Complex64> {
    fn to_value(&self) -> MatrixValue {
        MatrixValue::Complex(self.clone())
    }
}

impl Emit for Matrix<BigRational> {
    fn to_value(&self) -> MatrixValue {
        MatrixValue::Rational(self.clone())
    }
}

struct Outcome<R> {
    result: SpectralResult<R>,
    parts: Vec<(&'static str, R)>,
}

fn evaluate<R: Ring>(func: Func, xs: &[R], backend: &Backend<R>, nodes: usize) -> formal_spectral::Result<Outcome<R>> {
    let x = &xs[0];
    let plain = |result| Ok(Outcome { result, parts: Vec::new() });
    let spectral = |f| spectral_integral(f, x, backend, ClassMode::Certify);
    let derived = |k| derived_decomposition(k, x, backend);
    match func {
        Func::Sgn => plain(spectral(SpectralFn::Sgn)?),
        Func::Sqrt => plain(spectral(SpectralFn::Sqrt)?),
        Func::Idem => plain(spectral(SpectralFn::Idem)?),
        Func::Fsqrt => plain(spectral(SpectralFn::Fsqrt)?),
        Func::Absr => plain(derived(DecompositionKind::AbsR)?),
        Func::Absi => plain(derived(DecompositionKind::AbsI)?),
        Func::Pol => plain(derived(DecompositionKind::Pol)?),
        Func::AbsF => plain(derived(DecompositionKind::AbsF)?),
        Func::Pertr => plain(derived(DecompositionKind::PertR)?),
        Func::Geomean => plain(geometric_mean(x, &xs[1], backend)?),
        Func::SqrtSegment => match backend {
            Backend::Quadrature { .. } => plain(sqrt_real_segment(x, nodes, Summation::Sequential)?),
            other => Err(Error::UnsupportedBackend {
                backend: other.name(),
                what: "sqrt-segment".into(),
            }),
        },
        Func::Split => {
            let sign = spectral(SpectralFn::Sgn)?;
            let split = spectral_split(x, backend)?;
            let result = SpectralResult {
                value: split.projector_plus,
                residuals: split.defects,
                ..sign
            };
            Ok(Outcome {
                result,
                parts: vec![
                    ("projector_minus", split.projector_minus),
                    ("q_minus", split.q_minus),
                    ("q_plus", split.q_plus),
                ],
            })
        }
    }
}

fn matrix_json(m: &impl Emit) -> CliResult<Value> {
    let j = m.to_value().to_json()?;
    Ok(serde_json::to_value(j).map_err(Error::from)?)
}

fn load(job: &Job) -> CliResult<Vec<MatrixValue>> {
    if job.inputs.len() != job.func.arity() {
        return Err(CliError::Usage(format!(
            "--fn {} takes {} --input, got {}",
            job.func.name(),
            job.func.arity(),
            job.inputs.len()
        )));
    }
    let values = job
        .inputs
        .iter()
        .map(|p| Ok(parse_matrix_json(&read_file(p)?)?))
        .collect::<CliResult<Vec<_>>>()?;
    let n = values[0].dim();
    if values.iter().any(|v| v.dim() != n) {
        return Err(Error::Dimension("inputs differ in size".into()).into());
    }
    Ok(values)
}

fn validate(job: &Job) -> CliResult<()> {
    if job.nodes < 2 || !job.nodes.is_power_of_two() {
        return Err(CliError::Usage(format!("--nodes {} is not a power of two", job.nodes)));
    }
    if !(job.tol > 0.0 && job.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol {} must be positive", job.tol)));
    }
    if job.order == 0 {
        return Err(CliError::Usage("--order must be positive".into()));
    }
    Ok(())
}

pub fn run(job: &Job, out: &mut Output) -> CliResult<()> {
    validate(job)?;
    let values = load(job)?;
    let exact = job.backend == BackendKind::Series && values.iter().all(|v| matches!(v, MatrixValue::Rational(_)));
    if exact {
        let xs: Vec<Matrix<BigRational>> = values
            .into_iter()
            .map(|v| match v {
                MatrixValue::Rational(m) => m,
                MatrixValue::Complex(_) => unreachable!("checked above"),
            })
            .collect();
        return run_in(job, &xs, None, out);
    }
    let xs: Vec<Matrix<Complex64>> = values.iter().map(MatrixValue::to_complex).collect();
    let fixture = match &job.sidecar {
        Some(p) => {
            let sidecar = fixture::parse_sidecar_json(&read_file(p)?)?;
            Some(Fixture::from_parts(xs[0].clone(), &sidecar)?)
        }
        None => None,
    };
    run_in(job, &xs, fixture.as_ref(), out)
}

fn backend_for<R: Ring>(job: &Job, fixture: Option<&Fixture>, size: usize) -> CliResult<Backend<R>>
where
    Backend<R>: FromFixture,
{
    Ok(match job.backend {
        BackendKind::Quadrature => Backend::quadrature(size),
        BackendKind::Series => Backend::series(size),
        BackendKind::Oracle => {
            let fx = fixture.ok_or_else(|| CliError::Usage("--backend oracle needs --sidecar".into()))?;
            Backend::<R>::from_fixture(fx)?
        }
    })
}

/// Oracle backends exist only over complex matrices.
pub trait FromFixture: Sized {
    fn from_fixture(fx: &Fixture) -> CliResult<Self>;
}

impl FromFixture for Backend<Matrix<Complex64>> {
    fn from_fixture(fx: &Fixture) -> CliResult<Self> {
        Ok(fx.oracle())
    }
}

impl FromFixture for Backend<Matrix<BigRational>> {
    fn from_fixture(_: &Fixture) -> CliResult<Self> {
        Err(CliError::Usage("the oracle backend needs complex input".into()))
    }
}

trait OracleError: Sized {
    fn oracle_error(&self, fx: Option<&Fixture>, f: Func) -> Option<f64>;
}

impl OracleError for Matrix<Complex64> {
    fn oracle_error(&self, fx: Option<&Fixture>, f: Func) -> Option<f64> {
        let sf = match f {
            Func::Sgn => SpectralFn::Sgn,
            Func::Sqrt | Func::SqrtSegment => SpectralFn::Sqrt,
            Func::Idem => SpectralFn::Idem,
            Func::Fsqrt => SpectralFn::Fsqrt,
            _ => return None,
        };
        Some(self.dist(&fx?.expected(sf).ok()?))
    }
}

impl OracleError for Matrix<BigRational> {
    fn oracle_error(&self, _: Option<&Fixture>, _: Func) -> Option<f64> {
        None
    }
}

fn run_in<R>(job: &Job, xs: &[R], fixture: Option<&Fixture>, out: &mut Output) -> CliResult<()>
where
    R: Emit + OracleError,
    Backend<R>: FromFixture,
{
    let size = match job.backend {
        BackendKind::Series => job.order,
        _ => job.nodes,
    };
    let backend = backend_for::<R>(job, fixture, size)?;
    let outcome = evaluate(job.func, xs, &backend, job.nodes)?;
    let r = &outcome.result;

    let mut line = Map::new();
    line.insert("fn".into(), json!(job.func.name()));
    line.insert("value".into(), matrix_json(&r.value)?);
    if !outcome.parts.is_empty() {
        let mut parts = Map::new();
        for (name, m) in &outcome.parts {
            parts.insert((*name).into(), matrix_json(m)?);
        }
        line.insert("parts".into(), Value::Object(parts));
    }
    line.insert("residuals".into(), json!(r.residuals));
    line.insert("error_budget".into(), json!(r.error_budget));
    line.insert("backend".into(), json!(r.backend));
    line.insert(
        "nodes".into(),
        match job.backend {
            BackendKind::Quadrature => json!(job.nodes),
            _ => Value::Null,
        },
    );
    if job.backend == BackendKind::Series {
        line.insert("order".into(), json!(job.order));
    }
    line.insert("margin".into(), json!(r.margin));
    if let Some(e) = r.value.oracle_error(fixture, job.func) {
        line.insert("oracle_error".into(), json!(e));
    }
    out.line(Value::Object(line));

    if job.verify && job.backend != BackendKind::Oracle {
        let mut rows = Vec::new();
        for k in [size / 2, size, size * 2] {
            if k < 2 {
                continue;
            }
            let b = backend_for::<R>(job, fixture, k)?;
            let o = evaluate(job.func, xs, &b, k)?;
            let mut row = Map::new();
            row.insert(if job.backend == BackendKind::Series { "order" } else { "nodes" }.into(), json!(k));
            row.insert("error_budget".into(), json!(o.result.error_budget));
            if let Some(e) = o.result.value.oracle_error(fixture, job.func) {
                row.insert("oracle_error".into(), json!(e));
            }
            rows.push((row, o.result.value));
        }
        let finest = rows.last().map(|(_, v)| v.clone());
        let table: Vec<Value> = rows
            .into_iter()
            .map(|(mut row, v)| {
                if let Some(f) = &finest {
                    row.insert("diff_to_finest".into(), json!(v.dist(f)));
                }
                Value::Object(row)
            })
            .collect();
        out.line(json!({ "convergence": table }));
    }

    if r.error_budget > job.tol {
        return Err(CliError::OverBudget {
            budget: r.error_budget,
            tol: job.tol,
        });
    }
    if job.verify {
        if let Some((name, value)) = r
            .residuals
            .iter()
            .find(|(_, v)| !(**v <= job.tol))
            .map(|(k, v)| (k.clone(), *v))
        {
            return Err(CliError::Invariant {
                name,
                value,
                tol: job.tol,
            });
        }
    }
    Ok(())
}
