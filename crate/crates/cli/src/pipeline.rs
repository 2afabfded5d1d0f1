//! `blur` and `deblur` on lattice signals and float grids.

use std::path::PathBuf;

use convinv_core::gaussian::{add_gaussian_noise, blur as gaussian_blur, naive_deblur, DeblurMode};
use convinv_core::lateral::{deconvolve, source_window};
use convinv_core::neumann::{neumann_inverse, van_cittert_deblur, DEFAULT_MAX_ORDER};
use convinv_core::signal::apply_to_signal;
use convinv_core::{AtomicMeasure, GridSignal, LatticeSignal, Mode, NeumannConfig, Scalar};

use crate::error::CliError;
use crate::files;
use crate::kernels::{
    base_kernel, config_header, default_kernel, lift, near_identity, parse_scalar, truncated_series, KernelSpec, Lines,
    SeriesKind,
};
use crate::{value_name, DeblurMethod, SideArg};

const DEFAULT_ORDER: u32 = 16;
const DEFAULT_TRUNCATION: u32 = 50;

pub const METRICS_HEADER: &str = "method,params,reference,max_err,l2_err";

pub struct BlurArgs {
    pub input: PathBuf,
    pub kernel: KernelSpec,
    pub a: Option<String>,
    pub sigma: f64,
    pub seed: u64,
    pub binary: bool,
    pub output: PathBuf,
}

pub fn blur(args: &BlurArgs, mode: Mode) -> Result<u8, CliError> {
    let mut config = vec![("input", args.input.display().to_string()), ("kernel", args.kernel.to_string())];
    if args.kernel == KernelSpec::Gaussian {
        let f = files::load_grid_signal(&args.input)?;
        files::check_grid_output(&args.output, f.dim())?;
        let mut g = gaussian_blur(&f)?;
        if args.sigma != 0.0 {
            g = add_gaussian_noise(&g, args.sigma, args.seed)?;
            config.push(("sigma", format!("{:e}", args.sigma)));
            config.push(("seed", args.seed.to_string()));
        }
        let header = config_header("blur", Mode::Float, &config);
        return files::save_grid_signal(&args.output, &g, &header, args.binary).map(|_| 0);
    }
    if args.sigma != 0.0 {
        return Err(CliError::precondition("noise is only added to float grids (--kernel gaussian)"));
    }
    let f = files::load_lattice_signal(&args.input, mode)?;
    files::check_lattice_output(&args.output, f.dim())?;
    let kernel = lift(base_kernel(&args.kernel, args.a.as_deref(), mode)?, f.dim())?;
    if let Some(a) = &args.a {
        config.push(("a", a.clone()));
    }
    let g = apply_to_signal(&f, &kernel)?;
    let header = config_header("blur", mode, &config);
    files::save_lattice_signal(&args.output, &g, &header, args.binary)?;
    Ok(0)
}

pub struct DeblurArgs {
    pub input: PathBuf,
    pub kernel: Option<KernelSpec>,
    pub method: DeblurMethod,
    pub n: Option<u32>,
    pub tol: Option<String>,
    pub a: Option<String>,
    pub side: SideArg,
    pub iterations: u32,
    pub band_limit: Option<f64>,
    pub truth: Option<PathBuf>,
    pub metrics: Option<PathBuf>,
    pub binary: bool,
    pub output: PathBuf,
}

/// One row of the metrics CSV.
struct Metrics {
    params: String,
    reference: &'static str,
    max_err: String,
    l2_err: String,
}

fn relative(err: f64, norm: f64) -> String {
    let v = if norm > 0.0 { err / norm } else { err };
    format!("{v:e}")
}

fn lattice_metrics(
    recovered: &LatticeSignal,
    observed: &LatticeSignal,
    kernel: &AtomicMeasure,
    truth: Option<&LatticeSignal>,
    params: String,
) -> Result<Metrics, CliError> {
    let (diff, norm, reference) = match truth {
        Some(t) => (recovered.sub(t)?, t.l2_norm(), "truth"),
        None => (apply_to_signal(recovered, kernel)?.sub(observed)?, observed.l2_norm(), "reblur"),
    };
    Ok(Metrics { params, reference, max_err: diff.max_abs().to_string(), l2_err: relative(diff.l2_norm(), norm) })
}

fn grid_metrics(recovered: &GridSignal, truth: Option<&GridSignal>, params: String) -> Result<Metrics, CliError> {
    let Some(t) = truth else {
        return Ok(Metrics { params, reference: "none", max_err: String::new(), l2_err: String::new() });
    };
    let t = t.aligned_to(recovered.geometry())?;
    let diff = recovered.sub(&t)?;
    Ok(Metrics {
        params,
        reference: "truth",
        max_err: format!("{:e}", diff.max_abs()),
        l2_err: relative(diff.l2_norm(), t.l2_norm()),
    })
}

fn series_kind(method: DeblurMethod, side: SideArg) -> Option<SeriesKind> {
    match method {
        DeblurMethod::Lateral => Some(SeriesKind::Lateral(side.into())),
        DeblurMethod::Theorem2 => Some(SeriesKind::Binomial),
        DeblurMethod::H => Some(SeriesKind::HalfPair),
        _ => None,
    }
}

/// Neumann and Van Cittert on a kernel `c·(δ₀ + μ)`.
fn near_identity_deblur(
    args: &DeblurArgs,
    g: &LatticeSignal,
    mode: Mode,
    config: &mut Lines,
) -> Result<(LatticeSignal, AtomicMeasure, String, Lines), CliError> {
    let spec = match (&args.kernel, &args.a) {
        (Some(spec), _) => spec.clone(),
        (None, Some(_)) => KernelSpec::ThreePoint,
        (None, None) => return Err(CliError::precondition("this method needs --kernel or --a")),
    };
    config.push(("kernel", spec.to_string()));
    if let Some(a) = &args.a {
        config.push(("a", a.clone()));
    }
    let kernel = lift(base_kernel(&spec, args.a.as_deref(), mode)?, g.dim())?;
    let (c, mu) = near_identity(&kernel)?;
    let window = source_window(g.window(), &kernel)
        .ok_or_else(|| CliError::precondition("kernel is wider than the observation"))?;
    let inv_c = Scalar::one(mode).checked_div(&c).expect("origin weight is nonzero");
    let mut lines = vec![("origin_weight", c.to_string()), ("mu_norm", mu.total_variation().to_string())];

    let (full, params) = if args.method == DeblurMethod::VanCittert {
        config.push(("iterations", args.iterations.to_string()));
        let iterates = van_cittert_deblur(&g.scale(&inv_c)?, &mu, args.iterations)?;
        (iterates.into_iter().last().expect("nonempty"), format!("iterations={}", args.iterations))
    } else {
        let (cfg, params) = match (&args.tol, args.n) {
            (Some(t), None) => {
                config.push(("tol", t.clone()));
                (NeumannConfig::residual(parse_scalar("tol", t, mode)?, DEFAULT_MAX_ORDER), format!("tol={t}"))
            }
            (_, n) => {
                let n = n.unwrap_or(DEFAULT_ORDER);
                config.push(("N", n.to_string()));
                (NeumannConfig::order(n), format!("N={n}"))
            }
        };
        let (nu, report) = neumann_inverse(&mu, &cfg)?;
        lines.push(("order", report.order.to_string()));
        lines.push(("residual_tv", report.residual_tv.to_string()));
        lines.push(("bound", report.bound.to_string()));
        (apply_to_signal(g, &nu.scale(&inv_c)?)?, params)
    };
    Ok((full.restrict(&window), kernel, params, lines))
}

fn deblur_lattice(args: &DeblurArgs, mode: Mode) -> Result<u8, CliError> {
    let g = files::load_lattice_signal(&args.input, mode)?;
    files::check_lattice_output(&args.output, g.dim())?;
    if let Some(m) = &args.metrics {
        files::check_output(m)?;
    }
    let truth = args.truth.as_deref().map(|p| files::load_lattice_signal(p, mode)).transpose()?;
    let mut config = vec![("input", args.input.display().to_string()), ("method", value_name(args.method))];

    let (recovered, kernel, params, lines) = match series_kind(args.method, args.side) {
        None => near_identity_deblur(args, &g, mode, &mut config)?,
        Some(kind) => {
            let spec = args
                .kernel
                .clone()
                .or_else(|| default_kernel(kind))
                .ok_or_else(|| CliError::precondition("lateral needs --kernel (δ₀+δ₁ or δ₋₁+δ₀)"))?;
            let n = args.n.unwrap_or(DEFAULT_TRUNCATION);
            config.push(("kernel", spec.to_string()));
            config.push(("N", n.to_string()));
            let mut params = format!("N={n}");
            if let SeriesKind::Lateral(_) = kind {
                let side = value_name(args.side);
                params.push_str(&format!(";side={side}"));
                config.push(("side", side));
            }
            let series = truncated_series(kind, &base_kernel(&spec, args.a.as_deref(), mode)?, n, g.dim())?;
            let (recovered, report) = deconvolve(&g, &series)?;
            let margin = report.boundary_margin.map(|m| m.to_string()).unwrap_or_default();
            let lines = vec![
                ("required_n", report.required_n.to_string()),
                ("truncation", report.truncation.to_string()),
                ("boundary_margin", margin),
                ("contamination_atoms", report.contamination.len().to_string()),
            ];
            (recovered, series.kernel().clone(), params, lines)
        }
    };
    if let Some(t) = &args.truth {
        config.push(("truth", t.display().to_string()));
    }
    let metrics = lattice_metrics(&recovered, &g, &kernel, truth.as_ref(), params)?;
    finish(args, mode, config, lines, metrics, |header| {
        files::save_lattice_signal(&args.output, &recovered, header, args.binary)
    })
}

fn deblur_grid(args: &DeblurArgs) -> Result<u8, CliError> {
    if !matches!(args.kernel, None | Some(KernelSpec::Gaussian)) {
        return Err(CliError::precondition("analytic and discrete-reciprocal undo the Gaussian kernel only"));
    }
    let g = files::load_grid_signal(&args.input)?;
    files::check_grid_output(&args.output, g.dim())?;
    if let Some(m) = &args.metrics {
        files::check_output(m)?;
    }
    let truth = args.truth.as_deref().map(files::load_grid_signal).transpose()?;
    let mut config = vec![
        ("input", args.input.display().to_string()),
        ("kernel", KernelSpec::Gaussian.to_string()),
        ("method", value_name(args.method)),
    ];
    let (deblur_mode, params) = match args.method {
        DeblurMethod::Analytic => {
            let params = match args.band_limit {
                Some(b) => {
                    config.push(("band_limit", b.to_string()));
                    format!("band_limit={b}")
                }
                None => "band_limit=none".to_string(),
            };
            (DeblurMode::AnalyticAmplifier { band_limit: args.band_limit }, params)
        }
        _ => {
            if args.band_limit.is_some() {
                return Err(CliError::precondition("--band-limit applies to the analytic method only"));
            }
            (DeblurMode::DiscreteReciprocal, String::new())
        }
    };
    let (recovered, diagnostics) = naive_deblur(&g, deblur_mode)?;
    let lines = vec![
        ("max_log_amplification", diagnostics.max_log_amplification.to_string()),
        ("predicted_gain_log", diagnostics.predicted_gain_log.to_string()),
    ];
    if let Some(t) = &args.truth {
        config.push(("truth", t.display().to_string()));
    }
    let metrics = grid_metrics(&recovered, truth.as_ref(), params)?;
    finish(args, Mode::Float, config, lines, metrics, |header| {
        files::save_grid_signal(&args.output, &recovered, header, args.binary)
    })
}

/// Writes the recovered signal and the metrics, and echoes both.
fn finish(
    args: &DeblurArgs,
    mode: Mode,
    config: Lines,
    lines: Lines,
    metrics: Metrics,
    save: impl FnOnce(&convinv_core::io::Header) -> Result<(), CliError>,
) -> Result<u8, CliError> {
    let mut header = config_header("deblur", mode, &config);
    for (k, v) in &lines {
        header.set(*k, v);
    }
    save(&header)?;
    let row = format!(
        "{},{},{},{},{}",
        value_name(args.method),
        metrics.params,
        metrics.reference,
        metrics.max_err,
        metrics.l2_err
    );
    let table = format!("{METRICS_HEADER}\n{row}\n");
    print!("{table}");
    if let Some(path) = &args.metrics {
        files::save_text(path, &format!("{}{table}", config_header("deblur", mode, &config).as_comments()))?;
    }
    Ok(0)
}

pub fn deblur(args: &DeblurArgs, mode: Mode) -> Result<u8, CliError> {
    match args.method {
        DeblurMethod::Analytic | DeblurMethod::DiscreteReciprocal => deblur_grid(args),
        _ => deblur_lattice(args, mode),
    }
}
