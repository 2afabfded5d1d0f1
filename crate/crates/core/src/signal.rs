//! Finitely supported signals on ℤ¹/ℤ² (images with integer pixel spacing).

use crate::lattice::{LatticePoint, WindowSpec};
use crate::measure::{AtomicMeasure, MeasureError};
use crate::scalar::{Mode, Scalar};

/// A signal on an integer box. Values outside `window` are zero.
///
/// Values are stored sparsely as a measure so that exact and float signals
/// share the measure arithmetic; `window` is the declared domain and always
/// contains the support.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSignal {
    window: WindowSpec,
    values: AtomicMeasure,
}

impl LatticeSignal {
    pub fn zeros(window: WindowSpec, mode: Mode) -> Self {
        let values = AtomicMeasure::zero(window.dim(), mode);
        LatticeSignal { window, values }
    }

    /// Wraps `values` on `window`; atoms outside the window are an error.
    pub fn new(window: WindowSpec, values: AtomicMeasure) -> Result<Self, MeasureError> {
        if window.dim() != values.dim() {
            return Err(MeasureError::DimensionMismatch { left: window.dim(), right: values.dim() });
        }
        let (_, outside) = values.split(&window);
        if !outside.is_empty() {
            return Err(MeasureError::OutsideWindow(window));
        }
        Ok(LatticeSignal { window, values })
    }

    /// The smallest signal carrying `values`; zero measures get the window
    /// `{0}`.
    pub fn from_measure(values: AtomicMeasure) -> Self {
        let window = values.bounding_box().unwrap_or_else(|| WindowSpec::centered(values.dim(), 0));
        LatticeSignal { window, values }
    }

    /// 1-d signal with `samples[k]` at index `lo + k`.
    pub fn from_samples_1d(lo: i64, samples: &[Scalar], mode: Mode) -> Result<Self, MeasureError> {
        assert!(!samples.is_empty(), "a signal needs at least one sample");
        let window = WindowSpec::interval(lo, lo + samples.len() as i64 - 1).expect("valid window");
        let values = AtomicMeasure::from_atoms(
            1,
            mode,
            samples.iter().enumerate().map(|(k, s)| (LatticePoint::One(lo + k as i64), s.clone())),
        )?;
        Ok(LatticeSignal { window, values })
    }

    /// Unit impulse at `at`, on the window `{at}`.
    pub fn impulse(at: LatticePoint, mode: Mode) -> Self {
        Self::from_measure(AtomicMeasure::dirac(at, Scalar::one(mode)))
    }

    pub fn window(&self) -> &WindowSpec {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn mode(&self) -> Mode {
        self.values.mode()
    }

    pub fn get(&self, p: &LatticePoint) -> Scalar {
        self.values.weight(p)
    }

    /// Nonzero samples as a measure.
    pub fn as_measure(&self) -> &AtomicMeasure {
        &self.values
    }

    /// Dense samples in row-major window order.
    pub fn samples(&self) -> Vec<Scalar> {
        self.window.points().map(|p| self.get(&p)).collect()
    }

    /// Restriction to `window`; the result's domain is `window`.
    pub fn restrict(&self, window: &WindowSpec) -> LatticeSignal {
        LatticeSignal { window: window.clone(), values: self.values.restrict(window) }
    }

    pub fn add(&self, other: &LatticeSignal) -> Result<LatticeSignal, MeasureError> {
        let values = self.values.add(&other.values)?;
        Ok(LatticeSignal { window: hull(&self.window, &other.window), values })
    }

    pub fn sub(&self, other: &LatticeSignal) -> Result<LatticeSignal, MeasureError> {
        let values = self.values.sub(&other.values)?;
        Ok(LatticeSignal { window: hull(&self.window, &other.window), values })
    }

    pub fn scale(&self, c: &Scalar) -> Result<LatticeSignal, MeasureError> {
        Ok(LatticeSignal { window: self.window.clone(), values: self.values.scale(c)? })
    }

    pub fn max_abs(&self) -> Scalar {
        self.values.max_abs_weight()
    }

    /// Euclidean norm of the samples, evaluated in floating point.
    pub fn l2_norm(&self) -> f64 {
        self.values.atoms().fold(0.0, |acc, (_, w)| acc + w.to_f64().powi(2)).sqrt()
    }

    pub fn to_mode(&self, mode: Mode) -> LatticeSignal {
        LatticeSignal { window: self.window.clone(), values: self.values.to_mode(mode) }
    }
}

fn hull(a: &WindowSpec, b: &WindowSpec) -> WindowSpec {
    let bounds = a.bounds().iter().zip(b.bounds()).map(|(&(l1, h1), &(l2, h2))| (l1.min(l2), h1.max(h2))).collect();
    WindowSpec::new(bounds).expect("hull of valid windows")
}

/// Convolves a lattice signal with a measure: `(f ∗ m)(p) = Σ_q f(p − q) m(q)`.
///
/// The output domain is the input window grown by the measure's bounding
/// box.
pub fn apply_to_signal(f: &LatticeSignal, m: &AtomicMeasure) -> Result<LatticeSignal, MeasureError> {
    if f.dim() != m.dim() {
        return Err(MeasureError::DimensionMismatch { left: f.dim(), right: m.dim() });
    }
    let values = f.values.convolve(m)?;
    let window = match m.bounding_box() {
        Some(bbox) => f.window.minkowski_sum(&bbox).expect("same dimension"),
        None => f.window.clone(),
    };
    Ok(LatticeSignal { window, values })
}
