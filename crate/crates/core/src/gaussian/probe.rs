//! Least-squares search for a compactly supported approximate inverse of the
//! Gaussian kernel.
//!
//! Candidate `k` is a sum of atoms on nodes `jΔₖ` with `|jΔₖ| ≤ radius`. The
//! probe minimizes `‖h ∗ k − t‖₂` on a fixed evaluation grid, where `t` is a
//! narrow Gaussian standing in for `δ₀`. Node sets grow with the radius, so
//! the residual can only decrease; it reports numbers, not a verdict.

use nalgebra::{DMatrix, DVector};

use super::{GaussianError, GaussianKernelSpec};

/// Evaluation grid spacing.
pub const EVAL_SPACING: f64 = 0.05;
/// Evaluation grid covers `[−EVAL_EXTENT, EVAL_EXTENT]`.
pub const EVAL_EXTENT: f64 = 20.0;
/// Spacing of candidate atoms.
pub const NODE_SPACING: f64 = 0.2;
/// Standard deviation of the target `δ₀` stand-in.
pub const TARGET_STD: f64 = 0.5;
/// Singular values below this fraction of the largest are dropped.
pub const RCOND: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub radius: f64,
    /// Candidate atoms `(position, weight)`.
    pub atoms: Vec<(f64, f64)>,
    /// Numerical rank of the least-squares system.
    pub rank: usize,
    /// `‖h ∗ k − t‖ / ‖t‖`.
    pub residual: f64,
    /// `min_c ‖c·h − t‖ / ‖t‖`.
    pub best_multiple_residual: f64,
}

fn relative_norm(v: &DVector<f64>, t: &DVector<f64>) -> f64 {
    v.norm() / t.norm()
}

pub fn kernel_inverse_nonexistence_probe(radius: f64) -> Result<ProbeReport, GaussianError> {
    let max = EVAL_EXTENT / 2.0;
    if !(radius > 0.0 && radius <= max) {
        return Err(GaussianError::InvalidRadius { radius, max });
    }
    let h = GaussianKernelSpec::new(1).expect("1-d kernel");
    let half = (EVAL_EXTENT / EVAL_SPACING).round() as i64;
    let xs: Vec<f64> = (-half..=half).map(|i| i as f64 * EVAL_SPACING).collect();
    let m = (radius / NODE_SPACING + 1e-9).floor() as i64;
    let nodes: Vec<f64> = (-m..=m).map(|j| j as f64 * NODE_SPACING).collect();

    let norm = 1.0 / (TARGET_STD * (2.0 * std::f64::consts::PI).sqrt());
    let target =
        DVector::from_iterator(xs.len(), xs.iter().map(|x| norm * (-x * x / (2.0 * TARGET_STD * TARGET_STD)).exp()));
    let a = DMatrix::from_fn(xs.len(), nodes.len(), |i, j| h.density(&[xs[i] - nodes[j]]));

    let svd = a.clone().svd(true, true);
    let eps = RCOND * svd.singular_values.max();
    let rank = svd.rank(eps);
    let weights = svd.solve(&target, eps).expect("both factors computed");
    let residual = relative_norm(&(&a * &weights - &target), &target);

    let column = DVector::from_iterator(xs.len(), xs.iter().map(|x| h.density(&[*x])));
    let c = column.dot(&target) / column.dot(&column);
    let best_multiple_residual = relative_norm(&(column * c - &target), &target);

    Ok(ProbeReport {
        radius,
        atoms: nodes.into_iter().zip(weights.iter().copied()).collect(),
        rank,
        residual,
        best_multiple_residual,
    })
}
