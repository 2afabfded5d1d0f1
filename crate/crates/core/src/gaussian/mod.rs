//! Gaussian blur `g = f ∗ h` with `h(x) = (2π)^{−d/2} e^{−‖x‖²/2}`, its naive
//! Fourier inversion `f = 𝓕⁻¹(𝓕(g)·e^{‖·‖²/2})`, and the noise experiment
//! showing why that inversion is unusable.
//!
//! Convolutions are periodic on a computation grid with at least `6` of
//! zero padding per side, so kernel mass wrapping around the grid meets
//! only zeros within `[−12, 12]` and the periodic result matches the linear
//! one. Amplification factors are kept as logarithms
//! since `e^{‖u‖²/2}` at the Nyquist frequency of a fine grid is far beyond
//! `f64`.

mod fourier;
mod grid;
mod probe;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::FftDirection;
use thiserror::Error;

pub use fourier::{angular_frequencies, dft_forward, dft_inverse, dtft_at, frequency_grid, wrapped_index, Spectrum};
pub use grid::{GridGeometry, GridSignal};
pub use probe::{kernel_inverse_nonexistence_probe, ProbeReport};

use fourier::fft_nd;

/// Kernel support radius per axis.
pub const SUPPORT_RADIUS: f64 = 6.0;
/// Largest spacing accepted when sampling the kernel.
pub const MAX_SPACING: f64 = 0.5;
/// Log-amplifications at or above this are never exponentiated.
pub const LOG_OVERFLOW_GUARD: f64 = 700.0;
/// Kernel spectrum magnitudes below this refuse division.
pub const RECIPROCAL_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussianError {
    #[error("invalid grid: {0}")]
    InvalidGeometry(String),
    #[error("grid signal contains a non-finite sample")]
    NonFinite,
    #[error("sample count does not match the grid")]
    ShapeMismatch,
    #[error("grids do not share spacing and lattice")]
    NotAligned,
    #[error("grid spacing {spacing} exceeds {MAX_SPACING}")]
    GridTooCoarse { spacing: f64 },
    #[error("grid covers [{lo}, {hi}] on axis {axis}, need at least [-6, 6]")]
    GridTooNarrow { axis: usize, lo: f64, hi: f64 },
    #[error("axis {axis} has {available} zero samples of padding, need {required}")]
    InsufficientPadding { axis: usize, required: usize, available: usize },
    #[error("kernel spectrum magnitude {magnitude:e} at bin {bin} is below {RECIPROCAL_FLOOR:e}")]
    ReciprocalUnderflow { bin: usize, magnitude: f64 },
    #[error("amplification e^{log_amplification} exceeds the overflow guard; set a band limit")]
    AmplifierOverflow { log_amplification: f64 },
    #[error("band limit {band_limit} exceeds the Nyquist frequency {nyquist}")]
    BandLimitAboveNyquist { band_limit: f64, nyquist: f64 },
    #[error("noise level must be finite and >= 0, got {0}")]
    InvalidSigma(f64),
    #[error("probe radius must lie in (0, {max}], got {radius}")]
    InvalidRadius { radius: f64, max: f64 },
}

/// The standard Gaussian density `N(0, 1_d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianKernelSpec {
    dim: usize,
}

impl GaussianKernelSpec {
    pub fn new(dim: usize) -> Result<Self, GaussianError> {
        if !(1..=2).contains(&dim) {
            return Err(GaussianError::InvalidGeometry(format!("kernel dimension {dim}")));
        }
        Ok(GaussianKernelSpec { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        (2.0 * std::f64::consts::PI).powf(-(self.dim as f64) / 2.0) * (-r2 / 2.0).exp()
    }

    /// `𝓕(h)(u) = e^{−‖u‖²/2}`.
    pub fn fourier_transform(&self, u: &[f64]) -> f64 {
        (-u.iter().map(|v| v * v).sum::<f64>() / 2.0).exp()
    }
}

fn check_kernel_grid(spec: &GaussianKernelSpec, geometry: &GridGeometry) -> Result<(), GaussianError> {
    if geometry.dim() != spec.dim() {
        return Err(GaussianError::ShapeMismatch);
    }
    for axis in 0..geometry.dim() {
        let spacing = geometry.spacing()[axis];
        if spacing > MAX_SPACING {
            return Err(GaussianError::GridTooCoarse { spacing });
        }
        let (lo, hi) = geometry.extent(axis);
        let slack = 1e-9 * spacing;
        if lo > -SUPPORT_RADIUS + slack || hi < SUPPORT_RADIUS - slack {
            return Err(GaussianError::GridTooNarrow { axis, lo, hi });
        }
    }
    Ok(())
}

/// Evaluates `h` at every point of `geometry`.
pub fn sample_gaussian(spec: &GaussianKernelSpec, geometry: &GridGeometry) -> Result<GridSignal, GaussianError> {
    check_kernel_grid(spec, geometry)?;
    GridSignal::from_fn(geometry.clone(), |x| spec.density(x))
}

/// Samples per side covering the kernel support.
pub fn kernel_half_width(spacing: f64) -> usize {
    (SUPPORT_RADIUS / spacing - 1e-9).ceil() as usize
}

/// `Δᵈ · DFT` of the kernel sampled at wrapped offsets over the whole
/// grid, in bin order: the exact transfer function of [`blur_within`] on
/// `geometry`. Real and ≈ `e^{−‖u_k‖²/2}`.
pub fn discrete_transfer(geometry: &GridGeometry) -> Vec<Complex64> {
    let spec = GaussianKernelSpec { dim: geometry.dim() };
    let mut data: Vec<Complex64> = (0..geometry.len())
        .map(|flat| {
            let x: Vec<f64> = geometry
                .multi_index(flat)
                .iter()
                .enumerate()
                .map(|(a, &k)| wrapped_index(k, geometry.shape()[a]) as f64 * geometry.spacing()[a])
                .collect();
            Complex64::new(spec.density(&x), 0.0)
        })
        .collect();
    fft_nd(&mut data, geometry.shape(), FftDirection::Inverse);
    let scale = geometry.cell_volume();
    data.iter_mut().for_each(|v| *v *= scale);
    data
}

fn periodic_filter(
    samples: &[f64],
    geometry: &GridGeometry,
    filter: impl Fn(usize, Complex64) -> Complex64,
) -> Vec<f64> {
    let mut data: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut data, geometry.shape(), FftDirection::Inverse);
    for (k, v) in data.iter_mut().enumerate() {
        *v = filter(k, *v);
    }
    fft_nd(&mut data, geometry.shape(), FftDirection::Forward);
    let n = geometry.len() as f64;
    data.iter().map(|c| c.re / n).collect()
}

/// Blurs `f` on the computation grid `computation`, which must contain `f`
/// on the same lattice with at least `2·⌈6/Δ⌉` zero samples per axis in
/// total, so the periodic convolution equals the linear one.
pub fn blur_within(f: &GridSignal, computation: &GridGeometry) -> Result<GridSignal, GaussianError> {
    if !f.fits_in(computation)? {
        return Err(GaussianError::NotAligned);
    }
    for axis in 0..f.dim() {
        let required = 2 * kernel_half_width(computation.spacing()[axis]);
        let available = computation.shape()[axis] - f.geometry().shape()[axis];
        if available < required {
            return Err(GaussianError::InsufficientPadding { axis, required, available });
        }
    }
    let embedded = f.aligned_to(computation)?;
    let transfer = discrete_transfer(computation);
    let samples = periodic_filter(embedded.samples(), computation, |k, v| v * transfer[k]);
    Ok(GridSignal::from_parts_unchecked(computation.clone(), samples))
}

/// `f ∗ h` on `f`'s grid padded by `⌈6/Δ⌉` zero samples on every side.
pub fn blur(f: &GridSignal) -> Result<GridSignal, GaussianError> {
    let pad: Vec<(usize, usize)> =
        f.geometry().spacing().iter().map(|&d| (kernel_half_width(d), kernel_half_width(d))).collect();
    blur_within(f, &f.geometry().padded(&pad))
}

/// How [`naive_deblur`] undoes the blur.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeblurMode {
    /// Multiply `𝓕(g)` by `e^{‖u‖²/2}` at the grid frequencies, zeroing
    /// frequencies above `band_limit` when one is given.
    AnalyticAmplifier { band_limit: Option<f64> },
    /// Divide by the discrete transfer function of the blur.
    DiscreteReciprocal,
}

/// Per-frequency amplification of a deblurring filter, in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDiagnostics {
    pub shape: Vec<usize>,
    /// `‖u_k‖` in bin order.
    pub frequency_norms: Vec<f64>,
    /// `‖u_k‖²/2 = ln e^{‖u_k‖²/2}` in bin order.
    pub log_amplification: Vec<f64>,
    pub max_log_amplification: f64,
    pub band_limit: Option<f64>,
    /// Bins passed by the band limit.
    pub in_band: usize,
    /// `−ln |H_k|` of the discrete transfer function, reciprocal mode only.
    pub discrete_log_gain: Option<Vec<f64>>,
    /// Log of the RMS gain white noise suffers through the applied filter:
    /// `½ ln((1/n) Σ_k A_k²)`.
    pub predicted_gain_log: f64,
    /// Observed over predicted noise error, when measured.
    pub observed_ratio: Option<f64>,
}

impl SpectrumDiagnostics {
    /// `e^{‖u_k‖²/2}`, or `None` above the overflow guard.
    pub fn amplification(&self, bin: usize) -> Option<f64> {
        let l = self.log_amplification[bin];
        (l < LOG_OVERFLOW_GUARD).then(|| l.exp())
    }

    pub fn max_amplification(&self) -> Option<f64> {
        (self.max_log_amplification < LOG_OVERFLOW_GUARD).then(|| self.max_log_amplification.exp())
    }

    pub fn predicted_gain(&self) -> Option<f64> {
        (self.predicted_gain_log < LOG_OVERFLOW_GUARD).then(|| self.predicted_gain_log.exp())
    }
}

fn log_mean_exp(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    let values: Vec<f64> = values.collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + (values.iter().map(|v| (v - max).exp()).sum::<f64>() / n as f64).ln()
}

fn in_band(norm: f64, band_limit: Option<f64>) -> bool {
    band_limit.is_none_or(|b| norm <= b)
}

/// Diagnostics of the analytic amplifier on `geometry`.
pub fn spectrum_diagnostics(geometry: &GridGeometry, band_limit: Option<f64>) -> SpectrumDiagnostics {
    let frequency_norms: Vec<f64> =
        frequency_grid(geometry).iter().map(|u| u.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    let log_amplification: Vec<f64> = frequency_norms.iter().map(|r| r * r / 2.0).collect();
    let max_log_amplification = log_amplification.iter().copied().fold(0.0, f64::max);
    let passed: Vec<f64> = frequency_norms
        .iter()
        .zip(&log_amplification)
        .filter(|(r, _)| in_band(**r, band_limit))
        .map(|(_, l)| 2.0 * l)
        .collect();
    let in_band_count = passed.len();
    let predicted_gain_log = 0.5 * log_mean_exp(passed.into_iter(), geometry.len());
    SpectrumDiagnostics {
        shape: geometry.shape().to_vec(),
        frequency_norms,
        log_amplification,
        max_log_amplification,
        band_limit,
        in_band: in_band_count,
        discrete_log_gain: None,
        predicted_gain_log,
        observed_ratio: None,
    }
}

/// Recovers `f` from `g` by spectral division; `g` lives on the computation
/// grid that [`blur`] or [`blur_within`] returned.
pub fn naive_deblur(g: &GridSignal, mode: DeblurMode) -> Result<(GridSignal, SpectrumDiagnostics), GaussianError> {
    let geometry = g.geometry();
    match mode {
        DeblurMode::AnalyticAmplifier { band_limit } => {
            let diagnostics = spectrum_diagnostics(geometry, band_limit);
            let mut factors = Vec::with_capacity(geometry.len());
            for (r, &l) in diagnostics.frequency_norms.iter().zip(&diagnostics.log_amplification) {
                if !in_band(*r, band_limit) {
                    factors.push(0.0);
                } else if l >= LOG_OVERFLOW_GUARD {
                    return Err(GaussianError::AmplifierOverflow { log_amplification: l });
                } else {
                    factors.push(l.exp());
                }
            }
            let mut spectrum = dft_forward(g);
            for (v, a) in spectrum.data_mut().iter_mut().zip(&factors) {
                *v *= *a;
            }
            let f = dft_inverse(&spectrum);
            if f.samples().iter().any(|v| !v.is_finite()) {
                return Err(GaussianError::NonFinite);
            }
            Ok((f, diagnostics))
        }
        DeblurMode::DiscreteReciprocal => {
            let transfer = discrete_transfer(geometry);
            let mut diagnostics = spectrum_diagnostics(geometry, None);
            let log_gain: Vec<f64> = transfer.iter().map(|h| -h.norm().ln()).collect();
            diagnostics.predicted_gain_log = 0.5 * log_mean_exp(log_gain.iter().map(|l| 2.0 * l), geometry.len());
            diagnostics.discrete_log_gain = Some(log_gain);
            if let Some((bin, h)) = transfer.iter().enumerate().find(|(_, h)| h.norm() < RECIPROCAL_FLOOR) {
                return Err(GaussianError::ReciprocalUnderflow { bin, magnitude: h.norm() });
            }
            let samples = periodic_filter(g.samples(), geometry, |k, v| v / transfer[k]);
            let f = GridSignal::new(geometry.clone(), samples)?;
            Ok((f, diagnostics))
        }
    }
}

/// One run of the noise experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseBlowup {
    pub band_limit: f64,
    pub sigma: f64,
    pub seed: u64,
    /// Log of the predicted RMS noise gain of the band-limited amplifier.
    pub predicted_gain_log: f64,
    /// RMS of (noisy reconstruction − f) over the computation grid.
    pub observed_error: f64,
    /// RMS of (noisy reconstruction − noiseless reconstruction).
    pub noise_error: f64,
    /// RMS of (noiseless reconstruction − f): the band-limitation error.
    pub band_error: f64,
    /// `noise_error / (sigma · e^{predicted_gain_log})`; NaN when sigma = 0.
    pub ratio: f64,
    pub diagnostics: SpectrumDiagnostics,
}

impl NoiseBlowup {
    pub const CSV_HEADER: &'static str = "band_limit,sigma,predicted_gain_log,observed_error,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:e},{},{:e},{}",
            self.band_limit, self.sigma, self.predicted_gain_log, self.observed_error, self.ratio
        )
    }
}

/// Adds i.i.d. `N(0, sigma²)` noise to every sample, drawn from ChaCha8
/// seeded with `seed`.
pub fn add_gaussian_noise(g: &GridSignal, sigma: f64, seed: u64) -> Result<GridSignal, GaussianError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(GaussianError::InvalidSigma(sigma));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = g
        .samples()
        .iter()
        .map(|&v| {
            let z: f64 = StandardNormal.sample(&mut rng);
            v + sigma * z
        })
        .collect();
    GridSignal::new(g.geometry().clone(), samples)
}

/// Blurs `f`, adds i.i.d. `N(0, sigma²)` noise to every sample (seeded
/// ChaCha8), and deblurs with the analytic amplifier cut at `band_limit`.
pub fn noise_blowup_experiment(
    f: &GridSignal,
    sigma: f64,
    seed: u64,
    band_limit: f64,
) -> Result<NoiseBlowup, GaussianError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(GaussianError::InvalidSigma(sigma));
    }
    let g = blur(f)?;
    let nyquist = g.geometry().nyquist();
    if !(band_limit >= 0.0 && band_limit <= nyquist) {
        return Err(GaussianError::BandLimitAboveNyquist { band_limit, nyquist });
    }
    let noisy = add_gaussian_noise(&g, sigma, seed)?;

    let mode = DeblurMode::AnalyticAmplifier { band_limit: Some(band_limit) };
    let (clean_rec, _) = naive_deblur(&g, mode)?;
    let (noisy_rec, mut diagnostics) = naive_deblur(&noisy, mode)?;
    let reference = f.aligned_to(g.geometry())?;

    let observed_error = noisy_rec.sub(&reference)?.rms();
    let noise_error = noisy_rec.sub(&clean_rec)?.rms();
    let band_error = clean_rec.sub(&reference)?.rms();
    let predicted_gain_log = diagnostics.predicted_gain_log;
    let ratio = if sigma == 0.0 { f64::NAN } else { noise_error / (sigma * predicted_gain_log.exp()) };
    diagnostics.observed_ratio = Some(ratio);
    Ok(NoiseBlowup {
        band_limit,
        sigma,
        seed,
        predicted_gain_log,
        observed_error,
        noise_error,
        band_error,
        ratio,
        diagnostics,
    })
}

/// A smooth test signal: a Gaussian bump of standard deviation 1.8 on 1024
/// samples of spacing 0.05 starting at −12.8.
pub fn reference_bump() -> GridSignal {
    let geometry = GridGeometry::line(1024, 0.05, -12.8).expect("valid grid");
    GridSignal::from_fn(geometry, |x| (-x[0] * x[0] / 6.48).exp()).expect("finite samples")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernel_1d(extent: f64, spacing: f64) -> GridSignal {
        let spec = GaussianKernelSpec::new(1).unwrap();
        sample_gaussian(&spec, &GridGeometry::symmetric(1, extent, spacing).unwrap()).unwrap()
    }

    #[test]
    fn sampled_values_and_symmetry() {
        let h = kernel_1d(8.0, 0.05);
        let center = h.geometry().shape()[0] / 2;
        assert!((h.samples()[center] - 0.398_942_280_401_432_7).abs() < 1e-15);
        let n = h.samples().len();
        for k in 0..n {
            let (a, b) = (h.samples()[k], h.samples()[n - 1 - k]);
            assert!((a - b).abs() <= 1e-12 * a.abs(), "{k}");
        }
        assert!((h.mass() - 1.0).abs() < 1e-6);
        let spec = GaussianKernelSpec::new(2).unwrap();
        let h2 = sample_gaussian(&spec, &GridGeometry::symmetric(2, 6.0, 0.25).unwrap()).unwrap();
        let c = h2.geometry().shape()[0] / 2;
        assert!((h2.get(&[c, c]) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert!((h2.mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kernel_grid_guards() {
        let spec = GaussianKernelSpec::new(1).unwrap();
        let coarse = GridGeometry::symmetric(1, 8.0, 0.8).unwrap();
        assert!(matches!(sample_gaussian(&spec, &coarse), Err(GaussianError::GridTooCoarse { .. })));
        let narrow = GridGeometry::symmetric(1, 5.0, 0.1).unwrap();
        assert!(matches!(sample_gaussian(&spec, &narrow), Err(GaussianError::GridTooNarrow { .. })));
    }

    #[test]
    fn spectrum_of_sampled_kernel() {
        let h = kernel_1d(8.0, 0.05);
        let s = dft_forward(&h);
        assert!((s.data()[0].re - 1.0).abs() < 1e-9);
        let at_one = dtft_at(&h, &[1.0]);
        assert!((at_one.re - (-0.5f64).exp()).abs() < 1e-4);
        assert!(at_one.im.abs() < 1e-12);
    }

    #[test]
    fn blur_of_impulse_is_kernel() {
        let g = GridGeometry::symmetric(1, 2.0, 0.05).unwrap();
        let mut samples = vec![0.0; g.len()];
        samples[g.len() / 2] = 1.0 / 0.05;
        let f = GridSignal::new(g, samples).unwrap();
        let blurred = blur(&f).unwrap();
        let spec = GaussianKernelSpec::new(1).unwrap();
        let err = blurred
            .samples()
            .iter()
            .enumerate()
            .map(|(k, v)| (v - spec.density(&blurred.geometry().point(k))).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-4, "{err}");
    }

    #[test]
    fn blur_preserves_mass_and_adds_variance() {
        let f = reference_bump();
        let g = blur(&f).unwrap();
        assert!(((g.mass() - f.mass()) / f.mass()).abs() <= 1e-8);
        assert!((g.variance(0) - f.variance(0) - 1.0).abs() <= 1e-4);
    }

    #[test]
    fn blur_of_constant_is_constant_inside() {
        let geometry = GridGeometry::line(400, 0.05, -10.0).unwrap();
        let f = GridSignal::new(geometry, vec![2.5; 400]).unwrap();
        let g = blur(&f).unwrap();
        let pad = kernel_half_width(0.05);
        // Points at least 6 away from the edge of the constant region.
        for k in 2 * pad..400 {
            assert!((g.samples()[k] - 2.5).abs() < 1e-6, "{k}");
        }
    }

    #[test]
    fn padding_is_enforced() {
        let f = reference_bump();
        let tight = f.geometry().padded(&[(10, 10)]);
        assert!(matches!(blur_within(&f, &tight), Err(GaussianError::InsufficientPadding { .. })));
    }

    #[test]
    fn discrete_reciprocal_round_trip_on_coarse_grid() {
        let geometry = GridGeometry::line(64, 0.5, -16.0).unwrap();
        let f = GridSignal::from_fn(geometry, |x| (-(x[0] - 1.0).powi(2) / 8.0).exp() - 0.5 * (-x[0] * x[0]).exp())
            .unwrap();
        let g = blur(&f).unwrap();
        let (rec, d) = naive_deblur(&g, DeblurMode::DiscreteReciprocal).unwrap();
        let err = rec.relative_l2_error(&f.aligned_to(g.geometry()).unwrap()).unwrap();
        assert!(err <= 1e-6, "{err}");
        assert!(d.discrete_log_gain.is_some());
    }

    #[test]
    fn discrete_reciprocal_breaks_down_on_fine_grid() {
        let f = reference_bump();
        let g = blur(&f).unwrap();
        match naive_deblur(&g, DeblurMode::DiscreteReciprocal) {
            Err(e) => assert!(matches!(e, GaussianError::ReciprocalUnderflow { .. })),
            Ok((rec, d)) => {
                assert!(d.predicted_gain_log > 30.0);
                let err = rec.relative_l2_error(&f.aligned_to(g.geometry()).unwrap()).unwrap();
                assert!(err > 1e-2, "{err}");
            }
        }
        let exact_zero =
            blur_within(&f.aligned_to(&GridGeometry::line(512, 0.05, -12.8).unwrap()).unwrap(), f.geometry()).unwrap();
        assert!(matches!(
            naive_deblur(&exact_zero, DeblurMode::DiscreteReciprocal),
            Err(GaussianError::ReciprocalUnderflow { .. })
        ));
    }

    #[test]
    fn amplifier_diagnostics_in_log_space() {
        let geometry = GridGeometry::line(1024, 0.05, -12.8).unwrap();
        let d = spectrum_diagnostics(&geometry, None);
        assert_eq!(d.log_amplification[0], 0.0);
        assert_eq!(d.amplification(0), Some(1.0));
        let nyq = std::f64::consts::PI / 0.05;
        assert!((d.max_log_amplification - nyq * nyq / 2.0).abs() < 1e-9);
        assert_eq!(d.max_amplification(), None);
        assert!(d.predicted_gain_log.is_finite() && d.predicted_gain_log > 1000.0);
        assert!(d.log_amplification.iter().skip(1).all(|&l| l > 0.0));
        let g = blur(&reference_bump()).unwrap();
        let err = naive_deblur(&g, DeblurMode::AnalyticAmplifier { band_limit: None }).unwrap_err();
        assert!(matches!(err, GaussianError::AmplifierOverflow { .. }));
    }

    #[test]
    fn band_limited_amplifier_recovers_smooth_signal() {
        let f = reference_bump();
        let g = blur(&f).unwrap();
        let (rec, d) = naive_deblur(&g, DeblurMode::AnalyticAmplifier { band_limit: Some(4.0) }).unwrap();
        assert!(d.in_band > 1);
        let err = rec.relative_l2_error(&f.aligned_to(g.geometry()).unwrap()).unwrap();
        assert!(err < 1e-6, "{err}");
    }

    #[test]
    fn noise_experiment_is_deterministic_and_linear() {
        let f = reference_bump();
        let a = noise_blowup_experiment(&f, 1e-12, 7, 6.0).unwrap();
        let b = noise_blowup_experiment(&f, 1e-12, 7, 6.0).unwrap();
        assert_eq!(a.csv_row(), b.csv_row());
        let c = noise_blowup_experiment(&f, 2e-12, 7, 6.0).unwrap();
        assert!((c.noise_error / a.noise_error - 2.0).abs() < 1e-3);
        let z = noise_blowup_experiment(&f, 0.0, 7, 6.0).unwrap();
        assert_eq!(z.observed_error, z.band_error);
        assert!(z.ratio.is_nan());
        assert!(noise_blowup_experiment(&f, -1.0, 7, 6.0).is_err());
        assert!(noise_blowup_experiment(&f, 1.0, 7, 100.0).is_err());
    }
}
