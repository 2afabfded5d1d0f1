//! `convinv`: convolve, invert and deblur from the command line.
//!
//! Exit codes: 0 ok, 1 failed check (`verify`), 2 parse or input error,
//! 3 dimension mismatch, 4 violated precondition, 5 truncation too short.

mod error;
mod files;
mod kernels;
mod measures;
mod pipeline;
mod sweeps;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convinv_core::Mode;

use crate::error::CliError;
use crate::kernels::KernelSpec;

#[derive(Debug, Parser)]
#[command(name = "convinv", version, about = "Convolution inverses of lattice measures and deblurring experiments")]
struct Cli {
    /// Arithmetic: exact rationals or f64.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvertMethod {
    /// Neumann series of a kernel `c·(δ₀ + μ)` with `‖μ‖ < 1`.
    Neumann,
    /// One-sided inverse of `δ₀ + δ₁` or `δ₋₁ + δ₀`.
    Lateral,
    /// Symmetric inverse of the binomial kernel `¼δ₋₁ + ½δ₀ + ¼δ₁`.
    Theorem2,
    /// Alternating inverse of `½(δ₀ + δ₁)`.
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeblurMethod {
    /// Iterates `f ← g − μ ∗ f` on a kernel `c·(δ₀ + μ)`.
    VanCittert,
    Neumann,
    Lateral,
    Theorem2,
    H,
    /// Fourier amplifier `e^{‖u‖²/2}`, optionally band limited.
    Analytic,
    /// Division by the sampled Gaussian's discrete transfer function.
    DiscreteReciprocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    /// Deviation of lateral reconstructions under one perturbed sample.
    NoiseLateral,
    /// Noise gain of band-limited Gaussian deblurring.
    NoiseGaussian,
    /// Largest coefficient of the truncated lateral inverses.
    Growth,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convolves two measure files.
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Builds a truncated inverse and reports its residual.
    Invert {
        /// `binomial`, `half-pair`, `three-point` or a measure file.
        #[arg(long)]
        kernel: Option<KernelSpec>,
        #[arg(long, value_enum)]
        method: InvertMethod,
        /// Series order (neumann) or truncation length.
        #[arg(long = "N")]
        n: Option<u32>,
        /// Neumann residual target; also the tolerance of the window check.
        #[arg(long)]
        tol: Option<String>,
        /// Center weight of the three-point kernel.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Also check `kernel ∗ inverse = δ₀` on this window (`lo:hi` or `lo:hi,lo:hi`).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Checks that a candidate inverts a kernel on a window.
    Verify {
        kernel: PathBuf,
        candidate: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        tol: Option<String>,
    },
    /// Blurs a lattice signal or float grid.
    Blur {
        input: PathBuf,
        /// `binomial`, `half-pair`, `three-point`, `gaussian` or a measure file.
        #[arg(long)]
        kernel: KernelSpec,
        #[arg(long)]
        a: Option<String>,
        /// Standard deviation of Gaussian noise added to a blurred grid.
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write PGM output as P5.
        #[arg(long)]
        binary: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recovers a signal from its blurred observation.
    Deblur {
        input: PathBuf,
        #[arg(long)]
        kernel: Option<KernelSpec>,
        #[arg(long, value_enum)]
        method: DeblurMethod,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long)]
        tol: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(long, default_value_t = 16)]
        iterations: u32,
        #[arg(long = "band-limit")]
        band_limit: Option<f64>,
        /// Ground truth for the error metrics; without it the recovered
        /// signal is re-blurred and compared with the input.
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Also write the metrics CSV here.
        #[arg(long)]
        metrics: Option<PathBuf>,
        #[arg(long)]
        binary: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Runs a sweep and writes its CSV.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        /// Truncation lengths, comma separated.
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<u32>,
        /// Perturbation size for noise-lateral.
        #[arg(long, default_value = "1/1000000")]
        eps: String,
        /// Noise levels for noise-gaussian, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1e-12,1e-10,1e-8")]
        sigma: Vec<f64>,
        /// Band limits for noise-gaussian, comma separated.
        #[arg(long = "band-limit", value_delimiter = ',', default_value = "4,6,8")]
        band_limit: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid signal for noise-gaussian; a smooth bump by default.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Defaults to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// The flag spelling of a value enum variant.
pub fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mode = cli.mode;
    match cli.command {
        Command::Convolve { a, b, output } => measures::convolve(&a, &b, &output, mode),
        Command::Invert { kernel, method, n, tol, a, side, window, output } => {
            let args = measures::InvertArgs { kernel, method, n, tol, a, side, window, output };
            measures::invert(&args, mode)
        }
        Command::Verify { kernel, candidate, window, tol } => {
            measures::verify(&kernel, &candidate, &window, tol.as_deref(), mode)
        }
        Command::Blur { input, kernel, a, sigma, seed, binary, output } => {
            let args = pipeline::BlurArgs { input, kernel, a, sigma, seed, binary, output };
            pipeline::blur(&args, mode)
        }
        Command::Deblur {
            input,
            kernel,
            method,
            n,
            tol,
            a,
            side,
            iterations,
            band_limit,
            truth,
            metrics,
            binary,
            output,
        } => {
            let args = pipeline::DeblurArgs {
                input,
                kernel,
                method,
                n,
                tol,
                a,
                side,
                iterations,
                band_limit,
                truth,
                metrics,
                binary,
                output,
            };
            pipeline::deblur(&args, mode)
        }
        Command::Experiment { name, n, eps, sigma, band_limit, seed, input, output } => {
            let args = sweeps::ExperimentArgs { name, n, eps, sigma, band_limit, seed, input, output };
            sweeps::run(&args, mode)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
