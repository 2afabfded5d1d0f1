//! `convolve`, `invert` and `verify`.

use std::path::{Path, PathBuf};

use convinv_core::io::Header;
use convinv_core::neumann::{neumann_inverse, DEFAULT_MAX_ORDER};
use convinv_core::{is_inverse, AtomicMeasure, Mode, NeumannConfig, Scalar, WindowSpec};

use crate::error::{CliError, CHECK_FAILED};
use crate::files;
use crate::kernels::{
    base_kernel, config_header, default_kernel, near_identity, parse_scalar, tolerance, truncated_series, KernelSpec,
    Lines, SeriesKind,
};
use crate::{value_name, InvertMethod, SideArg};

/// Default Neumann order and lateral truncation length.
const DEFAULT_ORDER: u32 = 16;
const DEFAULT_TRUNCATION: u32 = 50;

pub fn convolve(a: &Path, b: &Path, output: &Path, mode: Mode) -> Result<u8, CliError> {
    files::check_output(output)?;
    let ma = files::load_measure(a, mode)?;
    let mb = files::load_measure(b, mode)?;
    if ma.dim() != mb.dim() && !(ma.is_empty() || mb.is_empty()) {
        return Err(CliError::dimension(format!(
            "{} is {}-d but {} is {}-d",
            a.display(),
            ma.dim(),
            b.display(),
            mb.dim()
        )));
    }
    let product = if ma.is_empty() || mb.is_empty() {
        AtomicMeasure::zero(ma.dim().max(mb.dim()), mode)
    } else {
        ma.convolve(&mb)?
    };
    let header = config_header("convolve", mode, &[("a", a.display().to_string()), ("b", b.display().to_string())]);
    files::save_measure(output, &product, &header)?;
    Ok(0)
}

pub struct InvertArgs {
    pub kernel: Option<KernelSpec>,
    pub method: InvertMethod,
    pub n: Option<u32>,
    pub tol: Option<String>,
    pub a: Option<String>,
    pub side: SideArg,
    pub window: Option<String>,
    pub output: PathBuf,
}

fn series_kind(method: InvertMethod, side: SideArg) -> Option<SeriesKind> {
    match method {
        InvertMethod::Neumann => None,
        InvertMethod::Lateral => Some(SeriesKind::Lateral(side.into())),
        InvertMethod::Theorem2 => Some(SeriesKind::Binomial),
        InvertMethod::H => Some(SeriesKind::HalfPair),
    }
}

fn boundary_text(m: &AtomicMeasure) -> String {
    m.atoms().map(|(p, w)| format!("{p}:{w}")).collect::<Vec<_>>().join(" ")
}

/// Builds `(kernel, inverse, report)` for the Neumann method.
fn neumann(
    args: &InvertArgs,
    mode: Mode,
    config: &mut Lines,
) -> Result<(AtomicMeasure, AtomicMeasure, Lines), CliError> {
    let spec = match (&args.kernel, &args.a) {
        (Some(spec), _) => spec.clone(),
        (None, Some(_)) => KernelSpec::ThreePoint,
        (None, None) => return Err(CliError::precondition("neumann needs --kernel or --a")),
    };
    config.push(("kernel", spec.to_string()));
    if let Some(a) = &args.a {
        config.push(("a", a.clone()));
    }
    let kernel = base_kernel(&spec, args.a.as_deref(), mode)?;
    let (c, mu) = near_identity(&kernel)?;
    let cfg = match (&args.tol, args.n) {
        (Some(t), None) => {
            config.push(("tol", t.clone()));
            NeumannConfig::residual(parse_scalar("tol", t, mode)?, DEFAULT_MAX_ORDER)
        }
        (_, n) => {
            let n = n.unwrap_or(DEFAULT_ORDER);
            config.push(("N", n.to_string()));
            NeumannConfig::order(n)
        }
    };
    let (nu, report) = neumann_inverse(&mu, &cfg)?;
    let inv_c = Scalar::one(mode).checked_div(&c).expect("origin weight is nonzero");
    let inverse = nu.scale(&inv_c)?;
    let lines = vec![
        ("origin_weight", c.to_string()),
        ("mu_norm", report.mu_norm.to_string()),
        ("order", report.order.to_string()),
        ("residual_tv", report.residual_tv.to_string()),
        ("bound", report.bound.to_string()),
        ("within_bound", report.within_bound().to_string()),
    ];
    Ok((kernel, inverse, lines))
}

pub fn invert(args: &InvertArgs, mode: Mode) -> Result<u8, CliError> {
    files::check_output(&args.output)?;
    let window = args.window.as_deref().map(WindowSpec::parse).transpose()?;
    let mut config = vec![("method", value_name(args.method))];

    let (kernel, inverse, mut lines) = match series_kind(args.method, args.side) {
        None => neumann(args, mode, &mut config)?,
        Some(kind) => {
            let spec = args
                .kernel
                .clone()
                .or_else(|| default_kernel(kind))
                .ok_or_else(|| CliError::precondition("lateral needs --kernel (δ₀+δ₁ or δ₋₁+δ₀)"))?;
            let n = args.n.unwrap_or(DEFAULT_TRUNCATION);
            config.push(("kernel", spec.to_string()));
            config.push(("N", n.to_string()));
            if let SeriesKind::Lateral(_) = kind {
                config.push(("side", value_name(args.side)));
            }
            let kernel = base_kernel(&spec, args.a.as_deref(), mode)?;
            let series = truncated_series(kind, &kernel, n, 1)?;
            let lines = vec![
                ("truncation", series.truncation().to_string()),
                ("boundary", boundary_text(series.boundary())),
                ("boundary_identity", series.verify().to_string()),
                ("max_coefficient", series.max_abs_coefficient().to_string()),
            ];
            (kernel, series.measure().clone(), lines)
        }
    };

    if let Some(w) = &window {
        let tol = tolerance(args.tol.as_deref(), mode)?;
        let check = is_inverse(&kernel, &inverse, w, &tol)?;
        config.push(("window", w.to_string()));
        lines.push(("window_holds", check.holds.to_string()));
        lines.push(("window_max_residual", check.max_inside.to_string()));
        lines.push(("outside_residual_atoms", check.outside.len().to_string()));
    }

    let mut header = config_header("invert", mode, &config);
    for (k, v) in &lines {
        header.set(*k, v);
        println!("{k} = {v}");
    }
    files::save_measure(&args.output, &inverse, &header)?;
    Ok(0)
}

pub fn verify(kernel: &Path, candidate: &Path, window: &str, tol: Option<&str>, mode: Mode) -> Result<u8, CliError> {
    let window = WindowSpec::parse(window)?;
    let tol = tolerance(tol, mode)?;
    let t = files::load_measure(kernel, mode)?;
    let v = files::load_measure(candidate, mode)?;
    let check = is_inverse(&t, &v, &window, &tol)?;
    let mut report = Header::new();
    report
        .set("holds", check.holds)
        .set("window", &window)
        .set("tolerance", &tol)
        .set("max_residual", &check.max_inside)
        .set("outside_residual_atoms", check.outside.len());
    print!("{}", report.as_sidecar());
    Ok(if check.holds { 0 } else { CHECK_FAILED })
}
