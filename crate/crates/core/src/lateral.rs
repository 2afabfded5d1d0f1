//! One-sided and symmetric inverses of two- and three-point kernels.
//!
//! The two-point kernels `δ₀ + δ₁` and `δ₋₁ + δ₀` have alternating inverses
//! supported on a half-line, on either side. Products of these series invert
//! the binomial kernel `¼δ₋₁ + ½δ₀ + ¼δ₁`, which sits outside the reach of
//! the Neumann series (its `δ₀`-normalized remainder has norm exactly 1).
//! Averaging the right- and left-sided products gives a symmetric inverse
//! with coefficient `2|n|(−1)^{|n|+1}` at `δ_n`.
//!
//! Infinite series are materialized as [`TruncatedSeries`]: the measure on
//! its window, the kernel it inverts, and the exact boundary defect
//! `kernel ∗ series − δ₀` predicted from the construction. The prediction is
//! never trusted blindly; [`TruncatedSeries::verify`] recomputes it.

use thiserror::Error;

use crate::lattice::{LatticePoint, WindowSpec};
use crate::measure::{AtomicMeasure, MeasureError};
use crate::scalar::{Mode, Scalar};
use crate::signal::{apply_to_signal, LatticeSignal};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LateralError {
    #[error("kernel is not δ₀+δ₁ or δ₋₁+δ₀")]
    UnsupportedKernel,
    #[error("truncation length must be at least 1")]
    EmptyTruncation,
    #[error("insufficient truncation: need N > {required}, have N = {actual}")]
    InsufficientTruncation { required: i64, actual: i64 },
    #[error("kernel does not match the kernel inverted by the series")]
    KernelMismatch,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Side of the half-line carrying a one-sided inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Support in the positive direction.
    Right,
    /// Support in the negative direction.
    Left,
}

/// The two unit-weight two-point kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitPair {
    /// `δ₀ + δ₁`
    ZeroOne,
    /// `δ₋₁ + δ₀`
    MinusOneZero,
}

impl UnitPair {
    pub fn measure(self, mode: Mode) -> AtomicMeasure {
        match self {
            UnitPair::ZeroOne => AtomicMeasure::from_integers_1d(mode, &[(0, 1), (1, 1)]),
            UnitPair::MinusOneZero => AtomicMeasure::from_integers_1d(mode, &[(-1, 1), (0, 1)]),
        }
    }

    pub fn detect(kernel: &AtomicMeasure) -> Option<UnitPair> {
        [UnitPair::ZeroOne, UnitPair::MinusOneZero].into_iter().find(|pair| pair.measure(kernel.mode()) == *kernel)
    }
}

/// `¼δ₋₁ + ½δ₀ + ¼δ₁`.
pub fn binomial_kernel(mode: Mode) -> AtomicMeasure {
    AtomicMeasure::from_integers_1d(mode, &[(-1, 1), (0, 2), (1, 1)])
        .scale(&Scalar::ratio(1, 4, mode))
        .expect("same mode")
}

/// `½(δ₀ + δ₁)`.
pub fn half_pair_kernel(mode: Mode) -> AtomicMeasure {
    UnitPair::ZeroOne.measure(mode).scale(&Scalar::ratio(1, 2, mode)).expect("same mode")
}

/// A window-truncated inverse series together with the kernel it inverts and
/// its boundary defect.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    measure: AtomicMeasure,
    window: WindowSpec,
    kernel: AtomicMeasure,
    boundary: AtomicMeasure,
}

impl TruncatedSeries {
    /// The series `δ₀` inverting `δ₀`.
    pub fn identity(dim: usize, mode: Mode) -> Self {
        TruncatedSeries {
            measure: AtomicMeasure::unit(dim, mode),
            window: WindowSpec::centered(dim, 0),
            kernel: AtomicMeasure::unit(dim, mode),
            boundary: AtomicMeasure::zero(dim, mode),
        }
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn window(&self) -> &WindowSpec {
        &self.window
    }

    pub fn kernel(&self) -> &AtomicMeasure {
        &self.kernel
    }

    /// Predicted `kernel ∗ measure − δ₀`.
    pub fn boundary(&self) -> &AtomicMeasure {
        &self.boundary
    }

    pub fn mode(&self) -> Mode {
        self.measure.mode()
    }

    pub fn dim(&self) -> usize {
        self.measure.dim()
    }

    /// Truncation length `N`: sup-norm distance from the origin to the
    /// nearest boundary atom. `i64::MAX` for an exact inverse.
    pub fn truncation(&self) -> i64 {
        self.boundary.support().map(LatticePoint::sup_norm).min().unwrap_or(i64::MAX)
    }

    /// `kernel ∗ measure − δ₀` by direct convolution.
    pub fn residual(&self) -> AtomicMeasure {
        self.kernel
            .convolve(&self.measure)
            .and_then(|m| m.sub(&AtomicMeasure::unit(self.dim(), self.mode())))
            .expect("series parts share dimension and mode")
    }

    /// True when the recomputed residual equals the predicted boundary
    /// atom-for-atom.
    pub fn verify(&self) -> bool {
        self.residual() == self.boundary
    }

    pub fn max_abs_coefficient(&self) -> Scalar {
        self.measure.max_abs_weight()
    }

    /// `c · series`, an inverse of `kernel / c` with the same boundary.
    pub fn rescale(&self, c: &Scalar) -> Result<TruncatedSeries, MeasureError> {
        let inv = Scalar::one(self.mode())
            .checked_div(c)
            .ok_or(MeasureError::ModeMismatch { left: self.mode(), right: c.mode() })?;
        Ok(TruncatedSeries {
            measure: self.measure.scale(c)?,
            window: self.window.clone(),
            kernel: self.kernel.scale(&inv)?,
            boundary: self.boundary.clone(),
        })
    }

    /// `λ·a + (1−λ)·b` for two inverses of the same kernel; the boundary
    /// combines the same way.
    pub fn affine(a: &TruncatedSeries, b: &TruncatedSeries, lambda: &Scalar) -> Result<TruncatedSeries, LateralError> {
        if a.kernel != b.kernel {
            return Err(LateralError::KernelMismatch);
        }
        let window = a
            .window
            .bounds()
            .iter()
            .zip(b.window.bounds())
            .map(|(&(l1, h1), &(l2, h2))| (l1.min(l2), h1.max(h2)))
            .collect();
        Ok(TruncatedSeries {
            measure: a.measure.affine_combination(&b.measure, lambda)?,
            window: WindowSpec::new(window).expect("hull of valid windows"),
            kernel: a.kernel.clone(),
            boundary: a.boundary.affine_combination(&b.boundary, lambda)?,
        })
    }

    /// Product series `a ⊗ b` on ℤ², inverting `kernel_a ⊗ kernel_b`.
    ///
    /// Boundary: `(δ₀ + B_a) ⊗ (δ₀ + B_b) − δ₀`.
    pub fn tensor(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, LateralError> {
        let unit = AtomicMeasure::unit(1, a.mode());
        let full_a = unit.add(&a.boundary)?;
        let full_b = unit.add(&b.boundary)?;
        let boundary = AtomicMeasure::tensor(&full_a, &full_b)?.sub(&AtomicMeasure::unit(2, a.mode()))?;
        Ok(TruncatedSeries {
            measure: AtomicMeasure::tensor(&a.measure, &b.measure)?,
            window: WindowSpec::product(&a.window, &b.window).ok_or(MeasureError::NotOneDimensional)?,
            kernel: AtomicMeasure::tensor(&a.kernel, &b.kernel)?,
            boundary,
        })
    }
}

fn alternating(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// First `n` terms of the one-sided inverse of `δ₀ + δ₁` or `δ₋₁ + δ₀`.
///
/// | kernel   | side  | series                   |
/// |----------|-------|--------------------------|
/// | δ₀ + δ₁  | Right | δ₀ − δ₁ + δ₂ − …         |
/// | δ₋₁ + δ₀ | Right | δ₁ − δ₂ + δ₃ − …         |
/// | δ₀ + δ₁  | Left  | δ₋₁ − δ₋₂ + δ₋₃ − …      |
/// | δ₋₁ + δ₀ | Left  | δ₀ − δ₋₁ + δ₋₂ − …       |
///
/// Convolving with the kernel telescopes to `δ₀ ± δ_{±n}`.
pub fn unit_pair_inverse(kernel: &AtomicMeasure, side: Side, n: u32) -> Result<TruncatedSeries, LateralError> {
    if n == 0 {
        return Err(LateralError::EmptyTruncation);
    }
    let pair = UnitPair::detect(kernel).ok_or(LateralError::UnsupportedKernel)?;
    let mode = kernel.mode();
    let n = n as i64;
    // (first index, direction): terms at first + dir·k, k = 0..n, sign (−1)^k.
    let (first, dir) = match (pair, side) {
        (UnitPair::ZeroOne, Side::Right) => (0, 1),
        (UnitPair::MinusOneZero, Side::Right) => (1, 1),
        (UnitPair::ZeroOne, Side::Left) => (-1, -1),
        (UnitPair::MinusOneZero, Side::Left) => (0, -1),
    };
    let atoms: Vec<(i64, i64)> = (0..n).map(|k| (first + dir * k, alternating(k))).collect();
    let last = first + dir * (n - 1);
    let window = WindowSpec::interval(first.min(last), first.max(last)).expect("valid window");
    // The first missing term (−1)^n at first + dir·n would cancel the
    // defect; the defect sits on the kernel-shifted boundary point.
    let defect_at = match (pair, side) {
        (UnitPair::ZeroOne, Side::Right) | (UnitPair::MinusOneZero, Side::Right) => n,
        (UnitPair::ZeroOne, Side::Left) | (UnitPair::MinusOneZero, Side::Left) => -n,
    };
    let boundary = AtomicMeasure::from_integers_1d(mode, &[(defect_at, -alternating(n))]);
    Ok(TruncatedSeries {
        measure: AtomicMeasure::from_integers_1d(mode, &atoms),
        window,
        kernel: kernel.clone(),
        boundary,
    })
}

/// Convolution of two truncated series; inverts the product of their
/// kernels.
pub fn cauchy_product(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, LateralError> {
    let window =
        a.window.minkowski_sum(&b.window).ok_or(MeasureError::DimensionMismatch { left: a.dim(), right: b.dim() })?;
    let boundary = a.boundary.add(&b.boundary)?.add(&a.boundary.convolve(&b.boundary)?)?;
    Ok(TruncatedSeries {
        measure: a.measure.convolve(&b.measure)?,
        window,
        kernel: a.kernel.convolve(&b.kernel)?,
        boundary,
    })
}

/// Symmetric inverse of the binomial kernel truncated to `[−n, n]`: weight
/// `2|k|(−1)^{|k|+1}` at `δ_k`, nothing at the origin.
pub fn symmetric_binomial_inverse(n: u32, mode: Mode) -> Result<TruncatedSeries, LateralError> {
    if n == 0 {
        return Err(LateralError::EmptyTruncation);
    }
    let n = n as i64;
    let atoms: Vec<(i64, i64)> =
        (-n..=n).filter(|&k| k != 0).map(|k| (k, -2 * k.abs() * alternating(k.abs()))).collect();
    // ¼(ν(n−1) + 2ν(n)) at ±n and ¼ν(n) at ±(n+1).
    let sign = -alternating(n);
    let at_edge = Scalar::ratio(sign * (n + 1), 2, mode);
    let beyond = Scalar::ratio(sign * n, 2, mode);
    let boundary = AtomicMeasure::from_atoms(
        1,
        mode,
        [
            (LatticePoint::One(-n - 1), beyond.clone()),
            (LatticePoint::One(-n), at_edge.clone()),
            (LatticePoint::One(n), at_edge),
            (LatticePoint::One(n + 1), beyond),
        ],
    )?;
    Ok(TruncatedSeries {
        measure: AtomicMeasure::from_integers_1d(mode, &atoms),
        window: WindowSpec::centered(1, n),
        kernel: binomial_kernel(mode),
        boundary,
    })
}

/// Two-sided inverse of `½(δ₀ + δ₁)` truncated to `[−n, n]`: weight `(−1)^k`
/// for `k ≥ 0` and `(−1)^{k+1}` for `k < 0`. All coefficients have modulus 1.
pub fn alternating_half_pair_inverse(n: u32, mode: Mode) -> Result<TruncatedSeries, LateralError> {
    if n == 0 {
        return Err(LateralError::EmptyTruncation);
    }
    let n = n as i64;
    let atoms: Vec<(i64, i64)> = (-n..=n).map(|k| (k, if k >= 0 { alternating(k) } else { -alternating(k) })).collect();
    let half = |s: i64| Scalar::ratio(s, 2, mode);
    let boundary = AtomicMeasure::from_atoms(
        1,
        mode,
        [(LatticePoint::One(-n), half(-alternating(n))), (LatticePoint::One(n + 1), half(alternating(n)))],
    )?;
    Ok(TruncatedSeries {
        measure: AtomicMeasure::from_integers_1d(mode, &atoms),
        window: WindowSpec::centered(1, n),
        kernel: half_pair_kernel(mode),
        boundary,
    })
}

/// Margin analysis of a reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    /// `(f ∗ kernel) ∗ series` on its full support.
    pub full: LatticeSignal,
    /// `f ∗ boundary`: where the truncation defect lands.
    pub contamination: AtomicMeasure,
    /// The sufficient rule asks for `N > required_n`.
    pub required_n: i64,
    /// Truncation length `N` of the series.
    pub truncation: i64,
    /// Exact margin: smallest `max_axis(|b_axis| − width_axis)` over the
    /// boundary atoms `b`. Positive means no contamination inside the
    /// signal's window. `None` for a series without boundary defect.
    pub boundary_margin: Option<i64>,
}

fn margin_check(f: &LatticeSignal, inverse: &TruncatedSeries) -> Result<(i64, Option<i64>), LateralError> {
    let window = f.window();
    let required = (0..window.dim()).map(|a| window.width(a) + 2).max().expect("nonempty");
    let boundary_margin = inverse
        .boundary()
        .support()
        .map(|b| (0..b.dim()).map(|a| b.coord(a).abs() - window.width(a)).max().expect("nonempty"))
        .min();
    if inverse.truncation() <= required {
        return Err(LateralError::InsufficientTruncation { required, actual: inverse.truncation() });
    }
    Ok((required, boundary_margin))
}

/// Blurs `f` with `kernel`, applies the truncated inverse and restricts to
/// `f`'s window.
///
/// Requires `N > w + 2` where `N` is the series half-width and `w` the widest
/// extent of `f`'s window (for `supp f ⊆ [−s, s]`, `N > 2s + 2`). In exact
/// mode the result then equals `f`.
pub fn reconstruct(
    f: &LatticeSignal,
    kernel: &AtomicMeasure,
    inverse: &TruncatedSeries,
) -> Result<(LatticeSignal, ReconstructionReport), LateralError> {
    if *kernel != inverse.kernel {
        return Err(LateralError::KernelMismatch);
    }
    let (required_n, boundary_margin) = margin_check(f, inverse)?;
    let blurred = apply_to_signal(f, kernel)?;
    let full = apply_to_signal(&blurred, &inverse.measure)?;
    let restricted = full.restrict(f.window());
    let contamination = f.as_measure().convolve(&inverse.boundary)?;
    let report =
        ReconstructionReport { full, contamination, required_n, truncation: inverse.truncation(), boundary_margin };
    Ok((restricted, report))
}

/// The window a signal must have had for its blur by `kernel` to span
/// `observed`: each axis shrinks by the kernel's reach. `None` when the
/// kernel is empty or wider than the observation.
pub fn source_window(observed: &WindowSpec, kernel: &AtomicMeasure) -> Option<WindowSpec> {
    let reach = kernel.bounding_box()?;
    if reach.dim() != observed.dim() {
        return None;
    }
    let bounds = (0..observed.dim()).map(|a| (observed.lo(a) - reach.lo(a), observed.hi(a) - reach.hi(a))).collect();
    WindowSpec::new(bounds).ok()
}

/// Deblurs an observation `g = f ∗ kernel` with the truncated inverse and
/// restricts to [`source_window`]. Same margin rule as [`reconstruct`],
/// measured on the source window. `contamination` is the part of `g ∗ series`
/// left outside that window, which equals `f ∗ boundary` when the rule holds.
pub fn deconvolve(
    g: &LatticeSignal,
    inverse: &TruncatedSeries,
) -> Result<(LatticeSignal, ReconstructionReport), LateralError> {
    if g.dim() != inverse.dim() {
        return Err(MeasureError::DimensionMismatch { left: g.dim(), right: inverse.dim() }.into());
    }
    let window = source_window(g.window(), &inverse.kernel).ok_or(LateralError::UnsupportedKernel)?;
    let f_shape = LatticeSignal::zeros(window.clone(), g.mode());
    let (required_n, boundary_margin) = margin_check(&f_shape, inverse)?;
    let full = apply_to_signal(g, &inverse.measure)?;
    let (_, contamination) = full.as_measure().split(&window);
    let restricted = full.restrict(&window);
    let report =
        ReconstructionReport { full, contamination, required_n, truncation: inverse.truncation(), boundary_margin };
    Ok((restricted, report))
}

/// Sensitivity of a reconstruction to a single perturbed observation.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplificationReport {
    pub truncation: i64,
    pub boundary_margin: Option<i64>,
    /// Largest absolute difference between the perturbed and the clean
    /// reconstruction, over the full reconstruction support.
    pub max_deviation: Scalar,
    /// `|eps| · max |series coefficient|`.
    pub predicted_deviation: Scalar,
    /// Perturbed minus clean reconstruction.
    pub deviation: AtomicMeasure,
}

impl AmplificationReport {
    /// `N,margin,max_dev,predicted_dev`.
    pub fn csv_row(&self) -> String {
        let margin = self.boundary_margin.map(|m| m.to_string()).unwrap_or_default();
        format!(
            "{},{},{:?},{:?}",
            self.truncation,
            margin,
            self.max_deviation.to_f64(),
            self.predicted_deviation.to_f64()
        )
    }
}

/// Perturbs `g = f ∗ kernel` by `eps` at `site`, reconstructs both the clean
/// and perturbed observations, and measures the difference.
pub fn noise_amplification(
    f: &LatticeSignal,
    kernel: &AtomicMeasure,
    inverse: &TruncatedSeries,
    eps: &Scalar,
    site: LatticePoint,
) -> Result<AmplificationReport, LateralError> {
    if *kernel != inverse.kernel {
        return Err(LateralError::KernelMismatch);
    }
    let (_, boundary_margin) = margin_check(f, inverse)?;
    let blurred = apply_to_signal(f, kernel)?;
    let perturbation = LatticeSignal::from_measure(AtomicMeasure::dirac(site, eps.clone()));
    let noisy = blurred.add(&perturbation)?;
    let clean = apply_to_signal(&blurred, &inverse.measure)?;
    let dirty = apply_to_signal(&noisy, &inverse.measure)?;
    let deviation = dirty.as_measure().sub(clean.as_measure())?;
    Ok(AmplificationReport {
        truncation: inverse.truncation(),
        boundary_margin,
        max_deviation: deviation.max_abs_weight(),
        predicted_deviation: &eps.abs() * &inverse.max_abs_coefficient(),
        deviation,
    })
}
