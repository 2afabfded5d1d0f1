//! Reproducible sweeps behind the CLI `experiment` subcommand. Each returns
//! rows with a fixed CSV header.

use crate::gaussian::{noise_blowup_experiment, GaussianError, GridSignal, NoiseBlowup};
use crate::lateral::{
    alternating_half_pair_inverse, binomial_kernel, half_pair_kernel, noise_amplification, symmetric_binomial_inverse,
    AmplificationReport, LateralError,
};
use crate::lattice::LatticePoint;
use crate::scalar::{Mode, Scalar};
use crate::signal::LatticeSignal;

/// Truncations `10, 20, …, 100`.
pub fn default_ladder() -> Vec<u32> {
    (1..=10).map(|k| 10 * k).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: u32,
    /// `max |coefficient|` of the symmetric binomial inverse.
    pub max_coefficient: Scalar,
    /// `2N`.
    pub predicted: Scalar,
    /// `max |coefficient|` of the alternating inverse of `½(δ₀ + δ₁)`.
    pub h_max_coefficient: Scalar,
}

impl GrowthRow {
    pub const CSV_HEADER: &'static str = "N,max_coefficient,predicted,h_max_coefficient";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n, self.max_coefficient, self.predicted, self.h_max_coefficient)
    }
}

pub fn growth_sweep(ns: &[u32], mode: Mode) -> Result<Vec<GrowthRow>, LateralError> {
    ns.iter()
        .map(|&n| {
            Ok(GrowthRow {
                n,
                max_coefficient: symmetric_binomial_inverse(n, mode)?.max_abs_coefficient(),
                predicted: Scalar::from_i64(2 * n as i64, mode),
                h_max_coefficient: alternating_half_pair_inverse(n, mode)?.max_abs_coefficient(),
            })
        })
        .collect()
}

/// Which truncated series a lateral noise run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LateralSeries {
    /// Symmetric inverse of `¼δ₋₁ + ½δ₀ + ¼δ₁`.
    Binomial,
    /// Alternating inverse of `½(δ₀ + δ₁)`.
    HalfPair,
}

impl LateralSeries {
    pub fn name(self) -> &'static str {
        match self {
            LateralSeries::Binomial => "binomial",
            LateralSeries::HalfPair => "half-pair",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LateralNoiseRow {
    pub series: LateralSeries,
    pub report: AmplificationReport,
}

impl LateralNoiseRow {
    pub const CSV_HEADER: &'static str = "series,N,margin,max_dev,predicted_dev";

    pub fn csv_row(&self) -> String {
        format!("{},{}", self.series.name(), self.report.csv_row())
    }
}

/// Perturbs the blurred unit impulse by `eps` at the origin and records the
/// deviation of the reconstruction, for each truncation and both series.
pub fn lateral_noise_sweep(ns: &[u32], eps: &Scalar) -> Result<Vec<LateralNoiseRow>, LateralError> {
    let mode = eps.mode();
    let f = LatticeSignal::impulse(LatticePoint::One(0), mode);
    let mut rows = Vec::new();
    for series in [LateralSeries::Binomial, LateralSeries::HalfPair] {
        for &n in ns {
            let (kernel, inverse) = match series {
                LateralSeries::Binomial => (binomial_kernel(mode), symmetric_binomial_inverse(n, mode)?),
                LateralSeries::HalfPair => (half_pair_kernel(mode), alternating_half_pair_inverse(n, mode)?),
            };
            let report = noise_amplification(&f, &kernel, &inverse, eps, LatticePoint::One(0))?;
            rows.push(LateralNoiseRow { series, report });
        }
    }
    Ok(rows)
}

/// Noise experiment over every `(band_limit, sigma)` pair, same seed.
pub fn gaussian_noise_sweep(
    f: &GridSignal,
    band_limits: &[f64],
    sigmas: &[f64],
    seed: u64,
) -> Result<Vec<NoiseBlowup>, GaussianError> {
    let mut rows = Vec::new();
    for &b in band_limits {
        for &s in sigmas {
            rows.push(noise_blowup_experiment(f, s, seed, b)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_is_two_n() {
        let rows = growth_sweep(&default_ladder(), Mode::Exact).unwrap();
        for r in &rows {
            assert_eq!(r.max_coefficient, r.predicted);
            assert!(r.h_max_coefficient.is_one());
        }
        assert_eq!(rows[0].csv_row(), "10,20,20,1");
    }

    #[test]
    fn lateral_noise_rows() {
        let eps = Scalar::ratio(1, 1_000_000, Mode::Exact);
        let rows = lateral_noise_sweep(&[50], &eps).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].report.max_deviation, Scalar::ratio(1, 10_000, Mode::Exact));
        assert_eq!(rows[0].csv_row(), "binomial,50,50,0.0001,0.0001");
        assert_eq!(rows[1].report.max_deviation, eps);
    }
}
