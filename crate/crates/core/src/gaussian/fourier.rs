//! Discrete approximations of the transform pair
//!
//! ```text
//! 𝓕(φ)(u)   = ∫ e^{i⟨u,v⟩} φ(v) dv
//! 𝓕⁻¹(ψ)(y) = (2π)^{−d} ∫ e^{−i⟨y,u⟩} ψ(u) du
//! ```
//!
//! sampled at the angular frequencies `u_k = 2πk/(nΔ)`, `k` wrapped into
//! `[−n/2, n/2)`.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::grid::{GridGeometry, GridSignal};

/// In-place unnormalized DFT over all axes. `Inverse` is the positive
/// exponent `Σ e^{+2πi jk/n}`.
pub(crate) fn fft_nd(data: &mut [Complex64], shape: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::new();
    match shape {
        [n] => planner.plan_fft(*n, direction).process(data),
        [rows, cols] => {
            planner.plan_fft(*cols, direction).process(data);
            let col = planner.plan_fft(*rows, direction);
            let mut buf = vec![Complex64::default(); *rows];
            for j in 0..*cols {
                for i in 0..*rows {
                    buf[i] = data[i * cols + j];
                }
                col.process(&mut buf);
                for i in 0..*rows {
                    data[i * cols + j] = buf[i];
                }
            }
        }
        _ => unreachable!("grids have one or two axes"),
    }
}

/// Signed DFT index of bin `k` out of `n`.
pub fn wrapped_index(k: usize, n: usize) -> i64 {
    if k < n.div_ceil(2) {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Angular frequencies of the DFT bins along one axis, in bin order.
pub fn angular_frequencies(n: usize, spacing: f64) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * wrapped_index(k, n) as f64 / (n as f64 * spacing)).collect()
}

/// Frequency vector of every bin, flat in grid order.
pub fn frequency_grid(geometry: &GridGeometry) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> =
        (0..geometry.dim()).map(|a| angular_frequencies(geometry.shape()[a], geometry.spacing()[a])).collect();
    (0..geometry.len())
        .map(|flat| geometry.multi_index(flat).iter().enumerate().map(|(a, &k)| axes[a][k]).collect())
        .collect()
}

/// Samples of `𝓕(f)` at the grid's DFT frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    geometry: GridGeometry,
    data: Vec<Complex64>,
}

impl Spectrum {
    /// Geometry of the spatial grid the spectrum belongs to.
    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        frequency_grid(&self.geometry)
    }
}

fn origin_phase(geometry: &GridGeometry, u: &[f64]) -> Complex64 {
    let angle: f64 = u.iter().zip(geometry.origin()).map(|(u, o)| u * o).sum();
    Complex64::from_polar(1.0, angle)
}

/// `𝓕(f)(u_k) ≈ Δᵈ Σ_j e^{i⟨u_k, x_j⟩} f_j`.
pub fn dft_forward(f: &GridSignal) -> Spectrum {
    let geometry = f.geometry().clone();
    let mut data: Vec<Complex64> = f.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(&mut data, geometry.shape(), FftDirection::Inverse);
    let scale = geometry.cell_volume();
    for (value, u) in data.iter_mut().zip(frequency_grid(&geometry)) {
        *value *= origin_phase(&geometry, &u) * scale;
    }
    Spectrum { geometry, data }
}

/// `𝓕⁻¹(ψ)(x_j) ≈ (2π)^{−d} Σ_k Δuᵈ e^{−i⟨x_j, u_k⟩} ψ_k`; exact inverse of
/// [`dft_forward`]. The imaginary part is dropped.
pub fn dft_inverse(spectrum: &Spectrum) -> GridSignal {
    let geometry = spectrum.geometry.clone();
    let mut data = spectrum.data.clone();
    for (value, u) in data.iter_mut().zip(frequency_grid(&geometry)) {
        *value *= origin_phase(&geometry, &u).conj();
    }
    fft_nd(&mut data, geometry.shape(), FftDirection::Forward);
    let norm = geometry.len() as f64 * geometry.cell_volume();
    let samples = data.iter().map(|c| c.re / norm).collect();
    GridSignal::from_parts_unchecked(geometry, samples)
}

/// Direct quadrature `Δᵈ Σ_j e^{i⟨u, x_j⟩} f_j` at an arbitrary frequency.
pub fn dtft_at(f: &GridSignal, u: &[f64]) -> Complex64 {
    let geometry = f.geometry();
    let sum: Complex64 = f
        .samples()
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let x = geometry.point(k);
            let angle: f64 = u.iter().zip(&x).map(|(u, x)| u * x).sum();
            Complex64::from_polar(v, angle)
        })
        .sum();
    sum * geometry.cell_volume()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapped_bins() {
        let w: Vec<i64> = (0..5).map(|k| wrapped_index(k, 5)).collect();
        assert_eq!(w, vec![0, 1, 2, -2, -1]);
        let w: Vec<i64> = (0..4).map(|k| wrapped_index(k, 4)).collect();
        assert_eq!(w, vec![0, 1, -2, -1]);
    }

    #[test]
    fn round_trip_2d_with_offset_origin() {
        let g = GridGeometry::new(vec![6, 5], vec![0.3, 0.7], vec![-1.1, 2.4]).unwrap();
        let f = GridSignal::from_fn(g, |x| (x[0] * 1.7).sin() + x[1] * x[1] - 0.25).unwrap();
        let back = dft_inverse(&dft_forward(&f));
        let err = back.sub(&f).unwrap().max_abs();
        assert!(err <= 1e-12 * f.max_abs(), "{err}");
    }

    #[test]
    fn forward_matches_direct_quadrature() {
        let g = GridGeometry::line(9, 0.25, -1.0).unwrap();
        let f = GridSignal::from_fn(g, |x| (-x[0] * x[0]).exp()).unwrap();
        let s = dft_forward(&f);
        for (k, u) in s.frequencies().iter().enumerate() {
            let d = dtft_at(&f, u);
            assert!((s.data()[k] - d).norm() < 1e-12, "bin {k}");
        }
    }
}
