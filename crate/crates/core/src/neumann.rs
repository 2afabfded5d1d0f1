//! Truncated Neumann-series inverses of near-identity measures.
//!
//! For a measure `μ` with total variation `‖μ‖ < 1` the partial sums
//!
//! ```text
//! ν_n = δ₀ + Σ_{k=1}^{n} (−1)^k μ^{k∗}
//! ```
//!
//! satisfy `(δ₀ + μ) ∗ ν_n = δ₀ + (−1)^n μ^{(n+1)∗}`, so the residual has
//! total variation at most `‖μ‖^{n+1}` by submultiplicativity of the norm.
//! [`van_cittert_deblur`] evaluates the same partial sums on a signal by the
//! fixed-point iteration `f ← g − μ ∗ f`.

use thiserror::Error;

use crate::lattice::LatticePoint;
use crate::measure::{AtomicMeasure, MeasureError};
use crate::scalar::Scalar;
use crate::signal::{apply_to_signal, LatticeSignal};

/// Order cap used by [`NeumannConfig::order`].
pub const DEFAULT_MAX_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NeumannError {
    #[error("series needs total variation < 1, got {norm}")]
    NormNotLessThanOne { norm: Scalar },
    #[error("residual target needs order > {cap} (bound at cap: {bound_at_cap})")]
    OrderCapExceeded { cap: u32, bound_at_cap: Scalar },
    #[error(
        "three-point parameter a = {a} is outside (1/2, 1); a = 1/2 is the binomial kernel, see the lateral inverse"
    )]
    ParameterOutOfRange { a: Scalar },
    #[error("invalid series configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// When to stop summing.
#[derive(Debug, Clone, PartialEq)]
pub enum StopRule {
    /// Sum exactly this many terms after δ₀.
    Order(u32),
    /// Smallest order whose a-priori bound `‖μ‖^{n+1}` is at most the target.
    Residual(Scalar),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeumannConfig {
    pub stop: StopRule,
    pub max_order: u32,
}

impl NeumannConfig {
    pub fn order(n: u32) -> Self {
        NeumannConfig { stop: StopRule::Order(n), max_order: n.max(DEFAULT_MAX_ORDER) }
    }

    pub fn residual(eps: Scalar, max_order: u32) -> Self {
        NeumannConfig { stop: StopRule::Residual(eps), max_order }
    }
}

/// Diagnostics of a truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct NeumannReport {
    /// Truncation order `n`.
    pub order: u32,
    /// `(δ₀ + μ) ∗ ν_n − δ₀`, computed by direct convolution.
    pub residual: AtomicMeasure,
    pub residual_tv: Scalar,
    /// `‖μ‖^{n+1}`.
    pub bound: Scalar,
    pub mu_norm: Scalar,
}

impl NeumannReport {
    pub fn within_bound(&self) -> bool {
        self.residual_tv <= self.bound
    }
}

fn resolve_order(norm: &Scalar, cfg: &NeumannConfig) -> Result<u32, NeumannError> {
    match &cfg.stop {
        StopRule::Order(n) => {
            if *n > cfg.max_order {
                return Err(NeumannError::InvalidConfig(format!("order {n} exceeds cap {}", cfg.max_order)));
            }
            Ok(*n)
        }
        StopRule::Residual(eps) => {
            if eps.mode() != norm.mode() {
                return Err(MeasureError::ModeMismatch { left: norm.mode(), right: eps.mode() }.into());
            }
            if eps <= &Scalar::zero(eps.mode()) {
                return Err(NeumannError::InvalidConfig(format!("residual target {eps} must be > 0")));
            }
            let mut bound = norm.clone();
            for n in 0..=cfg.max_order {
                if &bound <= eps {
                    return Ok(n);
                }
                bound = &bound * norm;
            }
            Err(NeumannError::OrderCapExceeded { cap: cfg.max_order, bound_at_cap: norm.powi(cfg.max_order + 1) })
        }
    }
}

fn require_contraction(mu: &AtomicMeasure) -> Result<Scalar, NeumannError> {
    let norm = mu.total_variation();
    if norm >= Scalar::one(mu.mode()) {
        return Err(NeumannError::NormNotLessThanOne { norm });
    }
    Ok(norm)
}

/// Returns `ν_n`, a truncated inverse of `δ₀ + μ`, with its residual report.
pub fn neumann_inverse(
    mu: &AtomicMeasure,
    cfg: &NeumannConfig,
) -> Result<(AtomicMeasure, NeumannReport), NeumannError> {
    let norm = require_contraction(mu)?;
    let order = resolve_order(&norm, cfg)?;
    let (dim, mode) = (mu.dim(), mu.mode());

    let unit = AtomicMeasure::unit(dim, mode);
    let mut term = unit.clone();
    let mut nu = unit.clone();
    for k in 1..=order {
        term = term.convolve(mu)?;
        nu = if k % 2 == 0 { nu.add(&term)? } else { nu.sub(&term)? };
    }

    let residual = unit.add(mu)?.convolve(&nu)?.sub(&unit)?;
    let report = NeumannReport {
        order,
        residual_tv: residual.total_variation(),
        residual,
        bound: norm.powi(order + 1),
        mu_norm: norm,
    };
    Ok((nu, report))
}

/// The three-point kernel `(1−a)/2·δ₋₁ + a·δ₀ + (1−a)/2·δ₁`.
pub fn three_point_kernel(a: &Scalar) -> AtomicMeasure {
    let mode = a.mode();
    let side = (&Scalar::one(mode) - a).checked_div(&Scalar::from_i64(2, mode)).expect("nonzero divisor");
    AtomicMeasure::from_atoms(
        1,
        mode,
        [(LatticePoint::One(-1), side.clone()), (LatticePoint::One(0), a.clone()), (LatticePoint::One(1), side)],
    )
    .expect("1-d atoms in one mode")
}

/// Inverts the three-point kernel for `½ < a < 1`.
///
/// The kernel factors as `a·(δ₀ + μ)` with `μ = (1−a)/(2a)·(δ₋₁ + δ₁)` and
/// `‖μ‖ = (1−a)/a < 1`; the result is `ν_n / a` and the report describes the
/// inner series.
pub fn invert_three_point(a: &Scalar, cfg: &NeumannConfig) -> Result<(AtomicMeasure, NeumannReport), NeumannError> {
    let mode = a.mode();
    let half = Scalar::ratio(1, 2, mode);
    let one = Scalar::one(mode);
    if !(a > &half && a < &one) {
        return Err(NeumannError::ParameterOutOfRange { a: a.clone() });
    }
    let coeff = (&one - a).checked_div(&(&Scalar::from_i64(2, mode) * a)).expect("a > 0");
    let mu = AtomicMeasure::from_integers_1d(mode, &[(-1, 1), (1, 1)]).scale(&coeff)?;
    let (nu, report) = neumann_inverse(&mu, cfg)?;
    let inv_a = one.checked_div(a).expect("a > 0");
    Ok((nu.scale(&inv_a)?, report))
}

/// Van Cittert iteration for an observation modeled as `g = f ∗ (δ₀ + μ)`.
///
/// Returns `[f⁽⁰⁾, …, f⁽ⁿ⁾]` with `f⁽⁰⁾ = g` and `f⁽ᵏ⁺¹⁾ = g − μ ∗ f⁽ᵏ⁾`, so
/// that `f⁽ⁿ⁾ = ν_n ∗ g`.
pub fn van_cittert_deblur(
    g: &LatticeSignal,
    mu: &AtomicMeasure,
    iterations: u32,
) -> Result<Vec<LatticeSignal>, NeumannError> {
    require_contraction(mu)?;
    if g.dim() != mu.dim() {
        return Err(MeasureError::DimensionMismatch { left: g.dim(), right: mu.dim() }.into());
    }
    let mut iterates = Vec::with_capacity(iterations as usize + 1);
    iterates.push(g.clone());
    for _ in 0..iterations {
        let prev = iterates.last().expect("nonempty");
        let next = g.sub(&apply_to_signal(prev, mu)?)?;
        iterates.push(next);
    }
    Ok(iterates)
}

/// Splits a kernel `c·(δ₀ + μ)` with `c` its weight at the origin into
/// `(c, μ)`. `None` when the kernel has no atom at the origin.
pub fn factor_near_identity(kernel: &AtomicMeasure) -> Option<(Scalar, AtomicMeasure)> {
    let origin = LatticePoint::origin(kernel.dim());
    let c = kernel.weight(&origin);
    let inv = Scalar::one(kernel.mode()).checked_div(&c)?;
    let mu = kernel.scale(&inv).and_then(|m| m.sub(&AtomicMeasure::unit(kernel.dim(), kernel.mode()))).ok()?;
    Some((c, mu))
}
