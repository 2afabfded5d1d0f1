//! Kernel specs, series construction and shared argument handling.

use std::convert::Infallible;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use convinv_core::io::Header;
use convinv_core::lateral::{
    alternating_half_pair_inverse, binomial_kernel, half_pair_kernel, symmetric_binomial_inverse, unit_pair_inverse,
    LateralError,
};
use convinv_core::neumann::{factor_near_identity, three_point_kernel};
use convinv_core::{AtomicMeasure, Mode, Scalar, Side, TruncatedSeries};

use crate::error::CliError;
use crate::files;
use crate::SideArg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelSpec {
    Binomial,
    HalfPair,
    ThreePoint,
    Gaussian,
    File(PathBuf),
}

impl FromStr for KernelSpec {
    type Err = Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "binomial" => KernelSpec::Binomial,
            "half-pair" => KernelSpec::HalfPair,
            "three-point" => KernelSpec::ThreePoint,
            "gaussian" => KernelSpec::Gaussian,
            path => KernelSpec::File(PathBuf::from(path)),
        })
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Binomial => f.write_str("binomial"),
            KernelSpec::HalfPair => f.write_str("half-pair"),
            KernelSpec::ThreePoint => f.write_str("three-point"),
            KernelSpec::Gaussian => f.write_str("gaussian"),
            KernelSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

pub fn parse_scalar(flag: &str, text: &str, mode: Mode) -> Result<Scalar, CliError> {
    Scalar::parse(text, mode).map_err(|e| CliError::parse(format!("--{flag}: {e}")))
}

/// `--tol` when given, else zero in exact mode and the default float
/// tolerance otherwise.
pub fn tolerance(tol: Option<&str>, mode: Mode) -> Result<Scalar, CliError> {
    match tol {
        Some(t) => parse_scalar("tol", t, mode),
        None if mode == Mode::Exact => Ok(Scalar::zero(mode)),
        None => Ok(Scalar::default_tolerance(mode)),
    }
}

/// Resolves a kernel spec to a measure of the dimension it was written in.
pub fn base_kernel(spec: &KernelSpec, a: Option<&str>, mode: Mode) -> Result<AtomicMeasure, CliError> {
    let kernel = match spec {
        KernelSpec::Binomial => binomial_kernel(mode),
        KernelSpec::HalfPair => half_pair_kernel(mode),
        KernelSpec::ThreePoint => {
            let a = a.ok_or_else(|| CliError::precondition("the three-point kernel needs --a"))?;
            three_point_kernel(&parse_scalar("a", a, mode)?)
        }
        KernelSpec::Gaussian => {
            return Err(CliError::precondition("the Gaussian kernel acts on float grids, not lattice measures"))
        }
        KernelSpec::File(path) => files::load_measure(path, mode)?,
    };
    if kernel.is_empty() {
        return Err(CliError::precondition("kernel is the zero measure"));
    }
    Ok(kernel)
}

/// A 1-d kernel applied to a 2-d signal becomes its tensor square.
pub fn lift(kernel: AtomicMeasure, dim: usize) -> Result<AtomicMeasure, CliError> {
    match (kernel.dim(), dim) {
        (d, e) if d == e => Ok(kernel),
        (1, 2) => Ok(AtomicMeasure::tensor(&kernel, &kernel)?),
        (d, e) => Err(CliError::dimension(format!("kernel is {d}-d but the signal is {e}-d"))),
    }
}

/// Splits `kernel = c·(δ₀ + μ)` and checks `‖μ‖ < 1`.
pub fn near_identity(kernel: &AtomicMeasure) -> Result<(Scalar, AtomicMeasure), CliError> {
    let (c, mu) = factor_near_identity(kernel).ok_or_else(|| {
        CliError::precondition("neumann needs a kernel c·(δ₀ + μ) with c ≠ 0, but the kernel has no atom at the origin")
    })?;
    let norm = mu.total_variation();
    if norm >= Scalar::one(norm.mode()) {
        return Err(CliError::precondition(format!(
            "neumann needs ‖μ‖ < 1 for kernel = c·(δ₀ + μ); here c = {c} and ‖μ‖ = {norm}"
        )));
    }
    Ok((c, mu))
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

/// Which closed-form series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Lateral(Side),
    Binomial,
    HalfPair,
}

/// Builds the truncated series for a 1-d `kernel`, tensored up to `dim`.
pub fn truncated_series(
    kind: SeriesKind,
    kernel: &AtomicMeasure,
    n: u32,
    dim: usize,
) -> Result<TruncatedSeries, CliError> {
    let mode = kernel.mode();
    if kernel.dim() != 1 {
        return Err(CliError::dimension(
            "closed-form series take a 1-d kernel; 2-d inverses are built as tensor products",
        ));
    }
    let series = match kind {
        SeriesKind::Lateral(side) => unit_pair_inverse(kernel, side, n)?,
        SeriesKind::Binomial => {
            if *kernel != binomial_kernel(mode) {
                return Err(CliError::precondition("theorem2 inverts the binomial kernel 1/4, 1/2, 1/4 only"));
            }
            symmetric_binomial_inverse(n, mode)?
        }
        SeriesKind::HalfPair => {
            if *kernel != half_pair_kernel(mode) {
                return Err(CliError::precondition("h inverts the kernel 1/2·(δ₀ + δ₁) only"));
            }
            alternating_half_pair_inverse(n, mode)?
        }
    };
    match dim {
        1 => Ok(series),
        2 => Ok(TruncatedSeries::tensor(&series, &series)?),
        d => Err(LateralError::Measure(convinv_core::MeasureError::UnsupportedDimension(d)).into()),
    }
}

/// Default kernel of a closed-form series.
pub fn default_kernel(kind: SeriesKind) -> Option<KernelSpec> {
    match kind {
        SeriesKind::Binomial => Some(KernelSpec::Binomial),
        SeriesKind::HalfPair => Some(KernelSpec::HalfPair),
        SeriesKind::Lateral(_) => None,
    }
}

/// `key = value` report lines in output order.
pub type Lines = Vec<(&'static str, String)>;

/// Header holding the resolved configuration of a run.
pub fn config_header(command: &str, mode: Mode, entries: &[(&str, String)]) -> Header {
    let mut h = Header::new();
    h.set("command", command).set("mode", mode);
    for (k, v) in entries {
        h.set(*k, v);
    }
    h
}
