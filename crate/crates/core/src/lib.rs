//! Convolution inversion on integer lattices and Gaussian deblurring.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`], [`lattice`] and [`measure`]: exact/float algebra of finite
//!   signed atomic measures on ℤ¹ and ℤ², with windowed inverse checks.
//! - [`signal`]: finitely supported lattice signals and the action of a
//!   measure on them.
//! - [`neumann`]: truncated Neumann-series inverses of `δ₀ + μ` with
//!   `‖μ‖ < 1`, the three-point kernel family and Van Cittert iteration.
//! - [`lateral`]: one-sided inverses of two-point kernels, their Cauchy
//!   products, the symmetric inverse of the binomial kernel and the
//!   alternating inverse of `½(δ₀ + δ₁)`.
//! - [`gaussian`]: sampled Gaussian blur, Fourier inversion with the
//!   probabilist convention, and the noise blow-up experiment.
//! - [`experiment`]: the reproducible sweeps the CLI exports as CSV.
//! - [`io`]: the text, CSV, PGM and raw-grid file formats.

pub mod experiment;
pub mod gaussian;
pub mod io;
pub mod lateral;
pub mod lattice;
pub mod measure;
pub mod neumann;
pub mod scalar;
pub mod signal;

pub use gaussian::{GridGeometry, GridSignal, SpectrumDiagnostics};
pub use lateral::{Side, TruncatedSeries};
pub use lattice::{LatticePoint, WindowSpec};
pub use measure::{is_inverse, is_zero_divisor_pair, AtomicMeasure, InverseCheck, MeasureError};
pub use neumann::{NeumannConfig, NeumannReport, StopRule};
pub use scalar::{Mode, Scalar};
pub use signal::LatticeSignal;
