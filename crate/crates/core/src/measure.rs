//! Finite signed atomic measures on ℤ¹ and ℤ².
//!
//! An [`AtomicMeasure`] is a sparse map from lattice points to nonzero
//! weights, all in one arithmetic [`Mode`]. Atoms with weight exactly zero
//! are never stored: every constructor and operation prunes them.
//!
//! Convolution pushes the product weight of each pair of atoms to the sum of
//! their points. With exact rationals all algebraic identities (unit,
//! commutativity, associativity, bilinearity) hold atom-for-atom.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lattice::{LatticePoint, WindowSpec};
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("arithmetic mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },
    #[error("verification window {0} does not contain the origin")]
    WindowExcludesOrigin(WindowSpec),
    #[error("measure dimension must be 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("signal values extend outside the declared window {0}")]
    OutsideWindow(WindowSpec),
    #[error("operation requires 1-d measures")]
    NotOneDimensional,
}

/// A finite signed measure with atoms on the integer lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    dim: usize,
    mode: Mode,
    atoms: BTreeMap<LatticePoint, Scalar>,
}

impl AtomicMeasure {
    /// The zero measure.
    pub fn zero(dim: usize, mode: Mode) -> Self {
        assert!((1..=2).contains(&dim), "lattice dimension must be 1 or 2");
        AtomicMeasure { dim, mode, atoms: BTreeMap::new() }
    }

    /// `weight · δ_point`; the zero measure when `weight == 0`.
    pub fn dirac(point: LatticePoint, weight: Scalar) -> Self {
        let mut m = Self::zero(point.dim(), weight.mode());
        if !weight.is_zero() {
            m.atoms.insert(point, weight);
        }
        m
    }

    /// The convolution unit δ₀.
    pub fn unit(dim: usize, mode: Mode) -> Self {
        Self::dirac(LatticePoint::origin(dim), Scalar::one(mode))
    }

    /// Builds a measure from atoms, summing repeated points and pruning zeros.
    pub fn from_atoms<I>(dim: usize, mode: Mode, atoms: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = (LatticePoint, Scalar)>,
    {
        if !(1..=2).contains(&dim) {
            return Err(MeasureError::UnsupportedDimension(dim));
        }
        let mut m = Self::zero(dim, mode);
        for (p, w) in atoms {
            if p.dim() != dim {
                return Err(MeasureError::DimensionMismatch { left: dim, right: p.dim() });
            }
            if w.mode() != mode {
                return Err(MeasureError::ModeMismatch { left: mode, right: w.mode() });
            }
            m.accumulate(p, &w);
        }
        m.prune();
        Ok(m)
    }

    /// 1-d measure from integer weights, e.g. `[(-1, 1), (0, 2), (1, 1)]`.
    pub fn from_integers_1d(mode: Mode, atoms: &[(i64, i64)]) -> Self {
        Self::from_atoms(1, mode, atoms.iter().map(|&(i, w)| (LatticePoint::One(i), Scalar::from_i64(w, mode))))
            .expect("1-d integer atoms are well formed")
    }

    fn accumulate(&mut self, p: LatticePoint, w: &Scalar) {
        match self.atoms.get_mut(&p) {
            Some(acc) => *acc += w,
            None => {
                self.atoms.insert(p, w.clone());
            }
        }
    }

    fn prune(&mut self) {
        self.atoms.retain(|_, w| !w.is_zero());
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of atoms (support size).
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Weight at `p`, zero when `p` carries no atom.
    pub fn weight(&self, p: &LatticePoint) -> Scalar {
        self.atoms.get(p).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&LatticePoint, &Scalar)> {
        self.atoms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.atoms.keys()
    }

    /// Smallest box containing the support; `None` for the zero measure.
    pub fn bounding_box(&self) -> Option<WindowSpec> {
        let first = self.atoms.keys().next()?;
        let mut bounds: Vec<(i64, i64)> = first.coords().into_iter().map(|c| (c, c)).collect();
        for p in self.atoms.keys() {
            for (a, b) in bounds.iter_mut().enumerate() {
                let c = p.coord(a);
                b.0 = b.0.min(c);
                b.1 = b.1.max(c);
            }
        }
        Some(WindowSpec::new(bounds).expect("bounding box is well formed"))
    }

    fn check_compatible(&self, other: &AtomicMeasure) -> Result<(), MeasureError> {
        if self.dim != other.dim {
            return Err(MeasureError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.mode != other.mode {
            return Err(MeasureError::ModeMismatch { left: self.mode, right: other.mode });
        }
        Ok(())
    }

    fn check_scalar(&self, c: &Scalar) -> Result<(), MeasureError> {
        if c.mode() != self.mode {
            return Err(MeasureError::ModeMismatch { left: self.mode, right: c.mode() });
        }
        Ok(())
    }

    pub fn add(&self, other: &AtomicMeasure) -> Result<AtomicMeasure, MeasureError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, w) in &other.atoms {
            out.accumulate(*p, w);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &AtomicMeasure) -> Result<AtomicMeasure, MeasureError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AtomicMeasure {
        AtomicMeasure { dim: self.dim, mode: self.mode, atoms: self.atoms.iter().map(|(p, w)| (*p, -w)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<AtomicMeasure, MeasureError> {
        self.check_scalar(c)?;
        let mut out = AtomicMeasure::zero(self.dim, self.mode);
        out.atoms = self.atoms.iter().map(|(p, w)| (*p, w * c)).collect();
        out.prune();
        Ok(out)
    }

    /// `λ·self + (1 − λ)·other`.
    pub fn affine_combination(&self, other: &AtomicMeasure, lambda: &Scalar) -> Result<AtomicMeasure, MeasureError> {
        let complement = &Scalar::one(self.mode) - lambda;
        self.scale(lambda)?.add(&other.scale(&complement)?)
    }

    /// Total variation norm: the sum of absolute atom weights.
    pub fn total_variation(&self) -> Scalar {
        let mut tv = Scalar::zero(self.mode);
        for w in self.atoms.values() {
            tv += &w.abs();
        }
        tv
    }

    /// Largest absolute atom weight, zero for the zero measure.
    pub fn max_abs_weight(&self) -> Scalar {
        self.atoms.values().map(Scalar::abs).fold(Scalar::zero(self.mode), |m, w| m.max(&w).clone())
    }

    pub fn convolve(&self, other: &AtomicMeasure) -> Result<AtomicMeasure, MeasureError> {
        self.check_compatible(other)?;
        let mut out = AtomicMeasure::zero(self.dim, self.mode);
        for (p, wp) in &self.atoms {
            for (q, wq) in &other.atoms {
                out.accumulate(*p + *q, &(wp * wq));
            }
        }
        out.prune();
        Ok(out)
    }

    /// n-fold convolution power; `power(0)` is δ₀.
    ///
    /// Uses the running product `μ^{(k+1)∗} = μ^{k∗} ∗ μ`.
    pub fn power(&self, n: u32) -> AtomicMeasure {
        let mut acc = AtomicMeasure::unit(self.dim, self.mode);
        for _ in 0..n {
            acc = acc.convolve(self).expect("operands share dimension and mode");
        }
        acc
    }

    /// Shifts every atom by `by`.
    pub fn translate(&self, by: LatticePoint) -> Result<AtomicMeasure, MeasureError> {
        if by.dim() != self.dim {
            return Err(MeasureError::DimensionMismatch { left: self.dim, right: by.dim() });
        }
        Ok(AtomicMeasure {
            dim: self.dim,
            mode: self.mode,
            atoms: self.atoms.iter().map(|(p, w)| (*p + by, w.clone())).collect(),
        })
    }

    /// Point reflection `x ↦ −x`.
    pub fn reflect(&self) -> AtomicMeasure {
        AtomicMeasure {
            dim: self.dim,
            mode: self.mode,
            atoms: self.atoms.iter().map(|(p, w)| (-*p, w.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.reflect() == *self
    }

    /// Atoms inside `window`.
    pub fn restrict(&self, window: &WindowSpec) -> AtomicMeasure {
        AtomicMeasure {
            dim: self.dim,
            mode: self.mode,
            atoms: self.atoms.iter().filter(|(p, _)| window.contains(p)).map(|(p, w)| (*p, w.clone())).collect(),
        }
    }

    /// `(inside, outside)` split of the atoms with respect to `window`.
    pub fn split(&self, window: &WindowSpec) -> (AtomicMeasure, AtomicMeasure) {
        let mut inside = AtomicMeasure::zero(self.dim, self.mode);
        let mut outside = AtomicMeasure::zero(self.dim, self.mode);
        for (p, w) in &self.atoms {
            let target = if window.contains(p) { &mut inside } else { &mut outside };
            target.atoms.insert(*p, w.clone());
        }
        (inside, outside)
    }

    /// Product measure `a ⊗ b` on ℤ² of two measures on ℤ.
    pub fn tensor(a: &AtomicMeasure, b: &AtomicMeasure) -> Result<AtomicMeasure, MeasureError> {
        if a.dim != 1 || b.dim != 1 {
            return Err(MeasureError::NotOneDimensional);
        }
        if a.mode != b.mode {
            return Err(MeasureError::ModeMismatch { left: a.mode, right: b.mode });
        }
        let mut out = AtomicMeasure::zero(2, a.mode);
        for (p, wp) in &a.atoms {
            for (q, wq) in &b.atoms {
                let pt = LatticePoint::pair(*p, *q).expect("1-d points");
                out.atoms.insert(pt, wp * wq);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Converts every weight into `mode`.
    pub fn to_mode(&self, mode: Mode) -> AtomicMeasure {
        let mut out = AtomicMeasure::zero(self.dim, mode);
        out.atoms = self.atoms.iter().map(|(p, w)| (*p, w.to_mode(mode))).collect();
        out.prune();
        out
    }
}

/// Outcome of a windowed inverse check.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseCheck {
    /// Every residual atom inside the window is within tolerance.
    pub holds: bool,
    /// `t ∗ v − δ₀` restricted to the window.
    pub inside: AtomicMeasure,
    /// `t ∗ v − δ₀` outside the window; reported, never discarded.
    pub outside: AtomicMeasure,
    /// Largest absolute residual weight inside the window.
    pub max_inside: Scalar,
}

fn check_tolerance(m: &AtomicMeasure, tol: &Scalar) -> Result<(), MeasureError> {
    if tol.mode() != m.mode() {
        return Err(MeasureError::ModeMismatch { left: m.mode(), right: tol.mode() });
    }
    Ok(())
}

/// Checks `t ∗ v = δ₀` on `window`, within `tol` per residual atom.
pub fn is_inverse(
    t: &AtomicMeasure,
    v: &AtomicMeasure,
    window: &WindowSpec,
    tol: &Scalar,
) -> Result<InverseCheck, MeasureError> {
    check_tolerance(t, tol)?;
    if window.dim() != t.dim() {
        return Err(MeasureError::DimensionMismatch { left: t.dim(), right: window.dim() });
    }
    if !window.contains_origin() {
        return Err(MeasureError::WindowExcludesOrigin(window.clone()));
    }
    let residual = t.convolve(v)?.sub(&AtomicMeasure::unit(t.dim(), t.mode()))?;
    let (inside, outside) = residual.split(window);
    let max_inside = inside.max_abs_weight();
    let holds = max_inside <= *tol;
    Ok(InverseCheck { holds, inside, outside, max_inside })
}

/// Checks `t ∗ d = 0` on `window`, within `tol` per atom.
///
/// A pair with an empty operand is never a zero-divisor pair.
pub fn is_zero_divisor_pair(
    t: &AtomicMeasure,
    d: &AtomicMeasure,
    window: &WindowSpec,
    tol: &Scalar,
) -> Result<bool, MeasureError> {
    check_tolerance(t, tol)?;
    if window.dim() != t.dim() {
        return Err(MeasureError::DimensionMismatch { left: t.dim(), right: window.dim() });
    }
    if t.is_empty() || d.is_empty() {
        return Ok(false);
    }
    let product = t.convolve(d)?.restrict(window);
    Ok(product.max_abs_weight() <= *tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d, Mode::Exact)
    }

    fn m1(atoms: &[(i64, i64)]) -> AtomicMeasure {
        AtomicMeasure::from_integers_1d(Mode::Exact, atoms)
    }

    #[test]
    fn dirac_examples() {
        let d = AtomicMeasure::dirac(LatticePoint::One(0), q(1, 1));
        assert_eq!(d.len(), 1);
        assert_eq!(d.total_variation(), q(1, 1));
        let d = AtomicMeasure::dirac(LatticePoint::One(3), q(-2, 1));
        assert_eq!(d.weight(&LatticePoint::One(3)), q(-2, 1));
        assert_eq!(d.total_variation(), q(2, 1));
        let d = AtomicMeasure::dirac(LatticePoint::One(5), q(0, 1));
        assert!(d.is_empty());
        assert_eq!(d.total_variation(), q(0, 1));
    }

    #[test]
    fn cancellation_prunes() {
        let a = m1(&[(0, 1)]);
        let b = m1(&[(0, -1)]);
        assert!(a.add(&b).unwrap().is_empty());
    }

    #[test]
    fn scaling_builds_binomial_kernel() {
        let pair = m1(&[(-1, 1), (1, 1)]);
        let s = pair.scale(&q(1, 4)).unwrap();
        assert_eq!(s.weight(&LatticePoint::One(-1)), q(1, 4));
        assert_eq!(s.weight(&LatticePoint::One(1)), q(1, 4));
        assert_eq!(s.len(), 2);
        assert!(pair.scale(&q(0, 1)).unwrap().is_empty());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = m1(&[(0, 1)]);
        let f = a.to_mode(Mode::Float);
        assert!(matches!(a.add(&f), Err(MeasureError::ModeMismatch { .. })));
        assert!(matches!(a.scale(&Scalar::Float(2.0)), Err(MeasureError::ModeMismatch { .. })));
        let two = AtomicMeasure::unit(2, Mode::Exact);
        assert!(matches!(a.convolve(&two), Err(MeasureError::DimensionMismatch { .. })));
        assert!(AtomicMeasure::from_atoms(1, Mode::Exact, [(LatticePoint::Two(0, 0), q(1, 1))]).is_err());
        assert!(AtomicMeasure::from_atoms(1, Mode::Exact, [(LatticePoint::One(0), Scalar::Float(1.0))]).is_err());
    }

    #[test]
    fn total_variation_examples() {
        let mu = AtomicMeasure::from_atoms(
            1,
            Mode::Exact,
            [(LatticePoint::One(-1), q(1, 4)), (LatticePoint::One(0), q(1, 2)), (LatticePoint::One(1), q(1, 4))],
        )
        .unwrap();
        assert_eq!(mu.total_variation(), q(1, 1));
        // (1 - a) / (2a) (δ₋₁ + δ₁) at a = 3/4 has norm (1 - a) / a = 1/3.
        let a = q(3, 4);
        let c = (&q(1, 1) - &a).checked_div(&(&q(2, 1) * &a)).unwrap();
        let m = m1(&[(-1, 1), (1, 1)]).scale(&c).unwrap();
        assert_eq!(m.total_variation(), q(1, 3));
    }

    #[test]
    fn convolution_examples() {
        let d = AtomicMeasure::dirac(LatticePoint::One(2), q(3, 1))
            .convolve(&AtomicMeasure::dirac(LatticePoint::One(-5), q(1, 2)))
            .unwrap();
        assert_eq!(d, AtomicMeasure::dirac(LatticePoint::One(-3), q(3, 2)));
        let left = m1(&[(-1, 1), (0, 1)]);
        let right = m1(&[(0, 1), (1, 1)]);
        assert_eq!(left.convolve(&right).unwrap(), m1(&[(-1, 1), (0, 2), (1, 1)]));
    }

    #[test]
    fn power_examples() {
        let mu = m1(&[(3, 7), (-2, 1)]);
        assert_eq!(mu.power(0), AtomicMeasure::unit(1, Mode::Exact));
        let half_pair = m1(&[(0, 1), (1, 1)]).scale(&q(1, 2)).unwrap();
        let expected = AtomicMeasure::from_atoms(
            1,
            Mode::Exact,
            [(LatticePoint::One(0), q(1, 4)), (LatticePoint::One(1), q(1, 2)), (LatticePoint::One(2), q(1, 4))],
        )
        .unwrap();
        assert_eq!(half_pair.power(2), expected);
        let binomial = m1(&[(-1, 1), (0, 2), (1, 1)]).scale(&q(1, 4)).unwrap();
        for n in 0..8 {
            assert_eq!(binomial.power(n).total_variation(), q(1, 1));
        }
    }

    #[test]
    fn inverse_of_translation() {
        let t = AtomicMeasure::dirac(LatticePoint::One(3), q(1, 1));
        let v = AtomicMeasure::dirac(LatticePoint::One(-3), q(1, 1));
        let check = is_inverse(&t, &v, &WindowSpec::centered(1, 7), &q(0, 1)).unwrap();
        assert!(check.holds);
        assert!(check.inside.is_empty() && check.outside.is_empty());
    }

    #[test]
    fn truncated_alternating_series_is_windowed_inverse() {
        let n = 10;
        let t = m1(&[(0, 1), (1, 1)]);
        let atoms: Vec<(i64, i64)> = (0..=n).map(|k| (k, if k % 2 == 0 { 1 } else { -1 })).collect();
        let v = m1(&atoms);
        let check = is_inverse(&t, &v, &WindowSpec::centered(1, n / 2), &q(0, 1)).unwrap();
        assert!(check.holds);
        assert!(check.inside.is_empty());
        assert_eq!(check.outside.len(), 1);
        assert!(check.outside.weight(&LatticePoint::One(n + 1)).abs().is_one());
    }

    #[test]
    fn inverse_check_needs_origin() {
        let t = AtomicMeasure::unit(1, Mode::Exact);
        let w = WindowSpec::interval(1, 4).unwrap();
        assert!(matches!(is_inverse(&t, &t, &w, &q(0, 1)), Err(MeasureError::WindowExcludesOrigin(_))));
    }

    #[test]
    fn zero_divisor_examples() {
        let w = WindowSpec::centered(1, 5);
        let z = q(0, 1);
        let unit = AtomicMeasure::unit(1, Mode::Exact);
        assert!(!is_zero_divisor_pair(&unit, &m1(&[(2, 5)]), &w, &z).unwrap());
        let t = m1(&[(0, 1), (1, -1)]);
        let d = m1(&[(0, 1), (1, 1)]);
        assert_eq!(t.convolve(&d).unwrap(), m1(&[(0, 1), (2, -1)]));
        assert!(!is_zero_divisor_pair(&t, &d, &w, &z).unwrap());
        assert!(!is_zero_divisor_pair(&t, &AtomicMeasure::zero(1, Mode::Exact), &w, &z).unwrap());
    }

    #[test]
    fn affine_combination_of_windowed_inverses() {
        // Right-sided and left-sided truncated inverses of δ₀ + δ₁.
        let n = 12;
        let t = m1(&[(0, 1), (1, 1)]);
        let right: Vec<(i64, i64)> = (0..n).map(|k| (k, if k % 2 == 0 { 1 } else { -1 })).collect();
        let left: Vec<(i64, i64)> = (1..=n).map(|k| (-k, if k % 2 == 1 { 1 } else { -1 })).collect();
        let v1 = m1(&right);
        let v2 = m1(&left);
        let w = WindowSpec::centered(1, n / 2);
        let lambda = q(3, 10);
        let mix = v1.affine_combination(&v2, &lambda).unwrap();
        // Oracle: direct convolution on the window.
        let direct = t.convolve(&mix).unwrap();
        for p in w.points() {
            let expected = if p.is_origin() { q(1, 1) } else { q(0, 1) };
            assert_eq!(direct.weight(&p), expected);
        }
        assert!(is_inverse(&t, &mix, &w, &q(0, 1)).unwrap().holds);
        let d = v2.sub(&v1).unwrap();
        assert!(is_zero_divisor_pair(&t, &d, &w, &q(0, 1)).unwrap());
    }

    #[test]
    fn tensor_and_bounding_box() {
        let a = m1(&[(-1, 1), (2, 3)]);
        let b = m1(&[(0, 2)]);
        let t = AtomicMeasure::tensor(&a, &b).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.weight(&LatticePoint::Two(2, 0)), q(6, 1));
        assert_eq!(t.bounding_box().unwrap().bounds(), &[(-1, 2), (0, 0)]);
        assert!(AtomicMeasure::zero(1, Mode::Exact).bounding_box().is_none());
        assert!(AtomicMeasure::tensor(&t, &a).is_err());
    }
}
