//! `fspec`: compute spectral functions, run verification suites and
//! generate fixtures.
//!
//! Exit codes: 0 ok, 1 I/O or parse, 2 spectral class refuted,
//! 3 non-convergence, 4 suite failure.

mod compute;
mod suites;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use formal_spectral::fixture::{self, Sidecar};
use formal_spectral::identity::IdentitySet;
use formal_spectral::ring::json::{matrix_to_json_string, MatrixValue};
use formal_spectral::spectral::SpectralFn;
use formal_spectral::Error;

use compute::{BackendKind, Func, Job};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("error budget {budget:.3e} above tolerance {tol:.3e}")]
    OverBudget { budget: f64, tol: f64 },
    #[error("invariant {name} = {value:.3e} above tolerance {tol:.3e}")]
    Invariant { name: String, value: f64, tol: f64 },
    #[error("{failed} of {total} checks failed, first: {first}")]
    Suite { failed: usize, total: usize, first: String },
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                Error::ClassViolation(_) | Error::NotInvertible(_) => 2,
                Error::NonConvergence { .. } | Error::DecayCertificate { .. } => 3,
                _ => 1,
            },
            CliError::OverBudget { .. } | CliError::Invariant { .. } => 3,
            CliError::Suite { .. } => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "fspec", version, about = "Formal spectral calculus on matrices and scalars")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function on matrix JSON input.
    Compute {
        #[arg(long = "fn", value_enum)]
        func: Func,
        /// Matrix JSON; geomean takes two.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        /// Eigen-data for the oracle backend.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BackendKind::Quadrature)]
        backend: BackendKind,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long, default_value_t = 32)]
        order: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Check the defining law and print a convergence table.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the exact identity catalog.
    VerifyIdentities {
        #[arg(long, default_value = "all")]
        set: IdentitySet,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a `V·D·V⁻¹` fixture and its sidecar.
    Generate {
        #[arg(long)]
        n: usize,
        /// Comma-separated, e.g. `3,-2` or `0.4+0.2i,0.6-0.2i`.
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Function whose excluded set the spectrum must avoid.
        #[arg(long = "fn", value_enum)]
        func: Option<Func>,
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sidecar_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Kernels,
    Halffree,
    Spectral,
    All,
}

/// Collects output lines and writes them to stdout and the report file.
pub struct Output {
    lines: Vec<String>,
}

impl Output {
    fn new() -> Self {
        Output { lines: Vec::new() }
    }

    pub fn line(&mut self, v: serde_json::Value) {
        self.lines.push(v.to_string());
    }

    fn flush(&self, report: Option<&Path>) -> CliResult<()> {
        let mut text = self.lines.join("\n");
        text.push('\n');
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
        if let Some(path) = report {
            write_file(path, &text)?;
        }
        Ok(())
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn generate(
    n: usize,
    eigenvalues: &str,
    seed: u64,
    func: Option<Func>,
    margin: f64,
    out: Option<&Path>,
    sidecar_out: Option<&Path>,
) -> CliResult<(String, String)> {
    let eigs = eigenvalues
        .split(',')
        .map(fixture::parse_eigenvalue)
        .collect::<formal_spectral::Result<Vec<_>>>()?;
    if let Some(f) = func {
        let sf = f
            .class_fn()
            .ok_or_else(|| CliError::Usage(format!("no margin check for --fn {f:?}")))?;
        fixture::check_margin(sf, &eigs, margin)?;
    }
    let fx = fixture::generate(n, &eigs, seed)?;
    let matrix = matrix_to_json_string(&MatrixValue::Complex(fx.matrix.clone()))?;
    let sidecar: Sidecar = fx.sidecar()?;
    let sidecar = serde_json::to_string(&sidecar).map_err(Error::from)?;
    match out {
        Some(p) => write_file(p, &format!("{matrix}\n"))?,
        None => println!("{matrix}"),
    }
    match sidecar_out {
        Some(p) => write_file(p, &format!("{sidecar}\n"))?,
        None => println!("{sidecar}"),
    }
    Ok((matrix, sidecar))
}

fn run(cli: Cli) -> CliResult<()> {
    let mut out = Output::new();
    match cli.command {
        Command::Compute {
            func,
            input,
            sidecar,
            backend,
            nodes,
            order,
            tol,
            verify,
            report,
        } => {
            let job = Job {
                func,
                inputs: input,
                sidecar,
                backend,
                nodes,
                order,
                tol,
                verify,
            };
            let res = compute::run(&job, &mut out);
            out.flush(report.as_deref())?;
            res
        }
        Command::Verify { suite, tol, report } => {
            let res = suites::run(suite, tol, &mut out);
            out.flush(report.as_deref())?;
            res
        }
        Command::VerifyIdentities { set, report } => {
            let res = suites::identities(set, &mut out);
            out.flush(report.as_deref())?;
            res
        }
        Command::Generate {
            n,
            eigenvalues,
            seed,
            func,
            margin,
            out: path,
            sidecar_out,
        } => generate(n, &eigenvalues, seed, func, margin, path.as_deref(), sidecar_out.as_deref()).map(|_| ()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the parse exit code; clap would use 2
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fspec: {e}");
            ExitCode::from(e.code())
        }
    }
}

impl Func {
    /// The function whose excluded set governs inputs of this job.
    pub fn class_fn(self) -> Option<SpectralFn> {
        Some(match self {
            Func::Sgn | Func::Absr | Func::Split => SpectralFn::Sgn,
            Func::Pertr => SpectralFn::PertR,
            Func::Sqrt | Func::SqrtSegment => SpectralFn::Sqrt,
            Func::Idem | Func::AbsF => SpectralFn::Idem,
            Func::Fsqrt => SpectralFn::Fsqrt,
            // these avoid the real axis, which no single-function margin expresses
            Func::Absi | Func::Pol | Func::Geomean => return None,
        })
    }
}
