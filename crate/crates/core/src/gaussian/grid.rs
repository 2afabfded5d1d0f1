use super::GaussianError;

/// Uniform sampling grid in one or two dimensions.
///
/// Sample `(i₀, i₁)` sits at `origin + i·spacing` and is stored at flat
/// index `i₀·n₁ + i₁` (axis 0 slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct GridGeometry {
    shape: Vec<usize>,
    spacing: Vec<f64>,
    origin: Vec<f64>,
}

impl GridGeometry {
    pub fn new(shape: Vec<usize>, spacing: Vec<f64>, origin: Vec<f64>) -> Result<Self, GaussianError> {
        let dim = shape.len();
        if !(1..=2).contains(&dim) || spacing.len() != dim || origin.len() != dim {
            return Err(GaussianError::InvalidGeometry(format!(
                "need 1 or 2 axes with matching spacing and origin, got shape {shape:?}"
            )));
        }
        if shape.iter().any(|&n| n < 2) {
            return Err(GaussianError::InvalidGeometry(format!("need at least 2 samples per axis, got {shape:?}")));
        }
        if spacing.iter().any(|&d| !(d.is_finite() && d > 0.0)) {
            return Err(GaussianError::InvalidGeometry(format!("spacing must be finite and > 0, got {spacing:?}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(GaussianError::InvalidGeometry(format!("origin must be finite, got {origin:?}")));
        }
        Ok(GridGeometry { shape, spacing, origin })
    }

    /// `n` samples starting at `origin`.
    pub fn line(n: usize, spacing: f64, origin: f64) -> Result<Self, GaussianError> {
        Self::new(vec![n], vec![spacing], vec![origin])
    }

    /// Square grid centered so that it spans `[−extent, extent]` per axis.
    pub fn symmetric(dim: usize, extent: f64, spacing: f64) -> Result<Self, GaussianError> {
        let half = (extent / spacing).round() as usize;
        Self::new(vec![2 * half + 1; dim], vec![spacing; dim], vec![-(half as f64) * spacing; dim])
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Δᵈ`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn coord(&self, axis: usize, index: usize) -> f64 {
        self.origin[axis] + index as f64 * self.spacing[axis]
    }

    /// First and last sample coordinate along `axis`.
    pub fn extent(&self, axis: usize) -> (f64, f64) {
        (self.origin[axis], self.coord(axis, self.shape[axis] - 1))
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        match self.dim() {
            1 => vec![flat],
            _ => vec![flat / self.shape[1], flat % self.shape[1]],
        }
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        match self.dim() {
            1 => index[0],
            _ => index[0] * self.shape[1] + index[1],
        }
    }

    /// Coordinates of the sample at `flat`.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).iter().enumerate().map(|(a, &i)| self.coord(a, i)).collect()
    }

    /// The grid grown by `pad[a] = (before, after)` samples per axis.
    pub fn padded(&self, pad: &[(usize, usize)]) -> GridGeometry {
        let shape = self.shape.iter().zip(pad).map(|(&n, &(b, a))| n + b + a).collect();
        let origin = (0..self.dim()).map(|a| self.origin[a] - pad[a].0 as f64 * self.spacing[a]).collect();
        GridGeometry { shape, spacing: self.spacing.clone(), origin }
    }

    /// Signed index offset of `other`'s origin on this grid, per axis, when
    /// both grids share spacing and lattice.
    pub fn offset_of(&self, other: &GridGeometry) -> Result<Vec<i64>, GaussianError> {
        if self.dim() != other.dim() {
            return Err(GaussianError::ShapeMismatch);
        }
        (0..self.dim())
            .map(|a| {
                let d = self.spacing[a];
                if ((other.spacing[a] - d) / d).abs() > 1e-12 {
                    return Err(GaussianError::NotAligned);
                }
                let steps = (other.origin[a] - self.origin[a]) / d;
                let rounded = steps.round();
                if (steps - rounded).abs() > 1e-6 {
                    return Err(GaussianError::NotAligned);
                }
                Ok(rounded as i64)
            })
            .collect()
    }

    /// Nyquist angular frequency `π/Δ` of the coarsest axis.
    pub fn nyquist(&self) -> f64 {
        self.spacing.iter().map(|d| std::f64::consts::PI / d).fold(f64::INFINITY, f64::min)
    }
}

/// Real samples on a [`GridGeometry`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    geometry: GridGeometry,
    samples: Vec<f64>,
}

impl GridSignal {
    pub fn new(geometry: GridGeometry, samples: Vec<f64>) -> Result<Self, GaussianError> {
        if samples.len() != geometry.len() {
            return Err(GaussianError::ShapeMismatch);
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(GaussianError::NonFinite);
        }
        Ok(GridSignal { geometry, samples })
    }

    pub fn zeros(geometry: GridGeometry) -> Self {
        let samples = vec![0.0; geometry.len()];
        GridSignal { geometry, samples }
    }

    /// Evaluates `f` at every sample point.
    pub fn from_fn(geometry: GridGeometry, f: impl Fn(&[f64]) -> f64) -> Result<Self, GaussianError> {
        let samples = (0..geometry.len()).map(|k| f(&geometry.point(k))).collect();
        Self::new(geometry, samples)
    }

    pub(crate) fn from_parts_unchecked(geometry: GridGeometry, samples: Vec<f64>) -> Self {
        debug_assert_eq!(geometry.len(), samples.len());
        GridSignal { geometry, samples }
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.samples[self.geometry.flat_index(index)]
    }

    /// `Δᵈ Σ f`.
    pub fn mass(&self) -> f64 {
        self.geometry.cell_volume() * self.samples.iter().sum::<f64>()
    }

    /// `(Δᵈ Σ f²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.geometry.cell_volume() * self.samples.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Mean of `x_axis` under `f` normalized by its mass.
    pub fn mean(&self, axis: usize) -> f64 {
        let weighted: f64 = (0..self.samples.len())
            .map(|k| self.geometry.coord(axis, self.geometry.multi_index(k)[axis]) * self.samples[k])
            .sum();
        self.geometry.cell_volume() * weighted / self.mass()
    }

    /// Central second moment along `axis` under `f` normalized by its mass.
    pub fn variance(&self, axis: usize) -> f64 {
        let m = self.mean(axis);
        let weighted: f64 = (0..self.samples.len())
            .map(|k| {
                let x = self.geometry.coord(axis, self.geometry.multi_index(k)[axis]) - m;
                x * x * self.samples[k]
            })
            .sum();
        self.geometry.cell_volume() * weighted / self.mass()
    }

    /// Pads with zeros, `pad[a] = (before, after)` samples per axis.
    pub fn padded(&self, pad: &[(usize, usize)]) -> GridSignal {
        let target = self.geometry.padded(pad);
        self.aligned_to(&target).expect("padding keeps the lattice")
    }

    /// Transfers samples onto another grid on the same lattice: overlapping
    /// samples are copied, the rest of `target` is zero and samples outside
    /// `target` are dropped.
    pub fn aligned_to(&self, target: &GridGeometry) -> Result<GridSignal, GaussianError> {
        let offset = target.offset_of(&self.geometry)?;
        let mut out = vec![0.0; target.len()];
        for (k, &v) in self.samples.iter().enumerate() {
            let idx = self.geometry.multi_index(k);
            let moved: Option<Vec<usize>> = idx
                .iter()
                .zip(&offset)
                .zip(target.shape())
                .map(|((&i, &o), &n)| {
                    let j = i as i64 + o;
                    (0..n as i64).contains(&j).then_some(j as usize)
                })
                .collect();
            if let Some(moved) = moved {
                out[target.flat_index(&moved)] = v;
            }
        }
        Ok(GridSignal { geometry: target.clone(), samples: out })
    }

    /// Whether every sample of `self` lands on `target`.
    pub fn fits_in(&self, target: &GridGeometry) -> Result<bool, GaussianError> {
        let offset = target.offset_of(&self.geometry)?;
        Ok(offset
            .iter()
            .zip(self.geometry.shape())
            .zip(target.shape())
            .all(|((&o, &n), &m)| o >= 0 && o + n as i64 <= m as i64))
    }

    pub fn sub(&self, other: &GridSignal) -> Result<GridSignal, GaussianError> {
        if self.geometry != other.geometry {
            return Err(GaussianError::ShapeMismatch);
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a - b).collect();
        Ok(GridSignal { geometry: self.geometry.clone(), samples })
    }

    /// Root mean square of the samples.
    pub fn rms(&self) -> f64 {
        (self.samples.iter().map(|v| v * v).sum::<f64>() / self.samples.len() as f64).sqrt()
    }

    /// `‖self − reference‖₂ / ‖reference‖₂`.
    pub fn relative_l2_error(&self, reference: &GridSignal) -> Result<f64, GaussianError> {
        Ok(self.sub(reference)?.l2_norm() / reference.l2_norm())
    }
}
