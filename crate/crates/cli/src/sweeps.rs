//! `experiment`: CSV sweeps.

use std::path::PathBuf;

use convinv_core::experiment::{
    default_ladder, gaussian_noise_sweep, growth_sweep, lateral_noise_sweep, GrowthRow, LateralNoiseRow,
};
use convinv_core::gaussian::{reference_bump, NoiseBlowup};
use convinv_core::Mode;

use crate::error::CliError;
use crate::files;
use crate::kernels::{config_header, parse_scalar};
use crate::{value_name, ExperimentName};

pub struct ExperimentArgs {
    pub name: ExperimentName,
    pub n: Vec<u32>,
    pub eps: String,
    pub sigma: Vec<f64>,
    pub band_limit: Vec<f64>,
    pub seed: u64,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn run(args: &ExperimentArgs, mode: Mode) -> Result<u8, CliError> {
    if let Some(out) = &args.output {
        files::check_output(out)?;
    }
    let ns = if args.n.is_empty() { default_ladder() } else { args.n.clone() };
    let mut config = vec![("experiment", value_name(args.name))];
    let (csv_header, rows) = match args.name {
        ExperimentName::Growth => {
            config.push(("N", join(&ns)));
            let rows = growth_sweep(&ns, mode)?;
            (GrowthRow::CSV_HEADER, rows.iter().map(GrowthRow::csv_row).collect::<Vec<_>>())
        }
        ExperimentName::NoiseLateral => {
            config.push(("N", join(&ns)));
            config.push(("eps", args.eps.clone()));
            let eps = parse_scalar("eps", &args.eps, mode)?;
            let rows = lateral_noise_sweep(&ns, &eps)?;
            (LateralNoiseRow::CSV_HEADER, rows.iter().map(LateralNoiseRow::csv_row).collect())
        }
        ExperimentName::NoiseGaussian => {
            let f = match &args.input {
                Some(p) => {
                    config.push(("input", p.display().to_string()));
                    files::load_grid_signal(p)?
                }
                None => {
                    config.push(("input", "reference-bump".to_string()));
                    reference_bump()
                }
            };
            config.push(("sigma", args.sigma.iter().map(|s| format!("{s:e}")).collect::<Vec<_>>().join(",")));
            config.push(("band_limit", join(&args.band_limit)));
            config.push(("seed", args.seed.to_string()));
            let rows = gaussian_noise_sweep(&f, &args.band_limit, &args.sigma, args.seed)?;
            (NoiseBlowup::CSV_HEADER, rows.iter().map(NoiseBlowup::csv_row).collect())
        }
    };
    let echoed = if args.name == ExperimentName::NoiseGaussian { Mode::Float } else { mode };
    let mut text = config_header("experiment", echoed, &config).as_comments();
    text.push_str(csv_header);
    text.push('\n');
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    match &args.output {
        Some(path) => files::save_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
