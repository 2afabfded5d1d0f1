//! Points of ℤ¹/ℤ² and axis-aligned integer windows.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

/// A point of the integer lattice in one or two dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticePoint {
    One(i64),
    Two(i64, i64),
}

impl LatticePoint {
    pub fn origin(dim: usize) -> Self {
        match dim {
            1 => LatticePoint::One(0),
            2 => LatticePoint::Two(0, 0),
            _ => panic!("lattice dimension must be 1 or 2, got {dim}"),
        }
    }

    /// Builds a point from a coordinate slice of length 1 or 2.
    pub fn from_coords(coords: &[i64]) -> Option<Self> {
        match *coords {
            [i] => Some(LatticePoint::One(i)),
            [i, j] => Some(LatticePoint::Two(i, j)),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LatticePoint::One(_) => 1,
            LatticePoint::Two(..) => 2,
        }
    }

    pub fn coord(&self, axis: usize) -> i64 {
        match (self, axis) {
            (LatticePoint::One(i), 0) => *i,
            (LatticePoint::Two(i, _), 0) => *i,
            (LatticePoint::Two(_, j), 1) => *j,
            _ => panic!("axis {axis} out of range for a {}-d point", self.dim()),
        }
    }

    pub fn coords(&self) -> Vec<i64> {
        (0..self.dim()).map(|a| self.coord(a)).collect()
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, LatticePoint::One(0) | LatticePoint::Two(0, 0))
    }

    /// Sum of two points, `None` when dimensions differ.
    pub fn checked_add(self, other: LatticePoint) -> Option<LatticePoint> {
        match (self, other) {
            (LatticePoint::One(a), LatticePoint::One(b)) => Some(LatticePoint::One(a + b)),
            (LatticePoint::Two(a, b), LatticePoint::Two(c, d)) => Some(LatticePoint::Two(a + c, b + d)),
            _ => None,
        }
    }

    /// Largest absolute coordinate.
    pub fn sup_norm(&self) -> i64 {
        match self {
            LatticePoint::One(i) => i.abs(),
            LatticePoint::Two(i, j) => i.abs().max(j.abs()),
        }
    }

    /// Concatenates two 1-d points into a 2-d point.
    pub fn pair(a: LatticePoint, b: LatticePoint) -> Option<LatticePoint> {
        match (a, b) {
            (LatticePoint::One(i), LatticePoint::One(j)) => Some(LatticePoint::Two(i, j)),
            _ => None,
        }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        self.checked_add(rhs).expect("adding lattice points of different dimension")
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        match self {
            LatticePoint::One(i) => LatticePoint::One(-i),
            LatticePoint::Two(i, j) => LatticePoint::Two(-i, -j),
        }
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        self + (-rhs)
    }
}

impl From<i64> for LatticePoint {
    fn from(i: i64) -> Self {
        LatticePoint::One(i)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((i, j): (i64, i64)) -> Self {
        LatticePoint::Two(i, j)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticePoint::One(i) => write!(f, "{i}"),
            LatticePoint::Two(i, j) => write!(f, "{i} {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("window axis {axis} has lo {lo} > hi {hi}")]
    Inverted { axis: usize, lo: i64, hi: i64 },
    #[error("window dimension must be 1 or 2, got {0}")]
    Dimension(usize),
    #[error("cannot parse window `{0}` (expected lo:hi or lo:hi,lo:hi)")]
    Syntax(String),
}

/// A closed integer box `[lo, hi]` per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowSpec {
    bounds: Vec<(i64, i64)>,
}

impl WindowSpec {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self, WindowError> {
        if !(1..=2).contains(&bounds.len()) {
            return Err(WindowError::Dimension(bounds.len()));
        }
        for (axis, &(lo, hi)) in bounds.iter().enumerate() {
            if lo > hi {
                return Err(WindowError::Inverted { axis, lo, hi });
            }
        }
        Ok(WindowSpec { bounds })
    }

    pub fn interval(lo: i64, hi: i64) -> Result<Self, WindowError> {
        Self::new(vec![(lo, hi)])
    }

    /// `[-n, n]` on every axis.
    pub fn centered(dim: usize, n: i64) -> Self {
        let n = n.abs();
        Self::new(vec![(-n, n); dim]).expect("centered window is valid")
    }

    /// Parses `lo:hi` (1-d) or `lo:hi,lo:hi` (2-d).
    pub fn parse(text: &str) -> Result<Self, WindowError> {
        let bounds = text
            .split(',')
            .map(|part| {
                let (lo, hi) = part.split_once(':').ok_or_else(|| WindowError::Syntax(text.into()))?;
                let lo = lo.trim().parse().map_err(|_| WindowError::Syntax(text.into()))?;
                let hi = hi.trim().parse().map_err(|_| WindowError::Syntax(text.into()))?;
                Ok((lo, hi))
            })
            .collect::<Result<Vec<_>, WindowError>>()?;
        Self::new(bounds)
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn lo(&self, axis: usize) -> i64 {
        self.bounds[axis].0
    }

    pub fn hi(&self, axis: usize) -> i64 {
        self.bounds[axis].1
    }

    /// `hi - lo` on the given axis.
    pub fn width(&self, axis: usize) -> i64 {
        self.bounds[axis].1 - self.bounds[axis].0
    }

    pub fn len(&self) -> usize {
        self.bounds.iter().map(|&(lo, hi)| (hi - lo + 1) as usize).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim() && self.bounds.iter().enumerate().all(|(a, &(lo, hi))| (lo..=hi).contains(&p.coord(a)))
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&LatticePoint::origin(self.dim()))
    }

    /// Minkowski sum of two boxes of the same dimension.
    pub fn minkowski_sum(&self, other: &WindowSpec) -> Option<WindowSpec> {
        if self.dim() != other.dim() {
            return None;
        }
        let bounds = self.bounds.iter().zip(&other.bounds).map(|(&(a, b), &(c, d))| (a + c, b + d)).collect();
        Some(WindowSpec { bounds })
    }

    /// Cartesian product of two 1-d windows.
    pub fn product(a: &WindowSpec, b: &WindowSpec) -> Option<WindowSpec> {
        if a.dim() != 1 || b.dim() != 1 {
            return None;
        }
        Some(WindowSpec { bounds: vec![a.bounds[0], b.bounds[0]] })
    }

    /// Half-width of the largest centered box inside this window, i.e. the
    /// smallest `min(-lo, hi)` over the axes. Negative when the window does
    /// not contain the origin.
    pub fn half_width(&self) -> i64 {
        self.bounds.iter().map(|&(lo, hi)| (-lo).min(hi)).min().expect("window has at least one axis")
    }

    /// All points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let dim = self.dim();
        let (lo0, hi0) = self.bounds[0];
        let (lo1, hi1) = if dim == 2 { self.bounds[1] } else { (0, 0) };
        (lo0..=hi0).flat_map(move |i| {
            (lo1..=hi1).map(move |j| if dim == 1 { LatticePoint::One(i) } else { LatticePoint::Two(i, j) })
        })
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bounds.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_parse_and_validate() {
        let w = WindowSpec::parse("-3:5").unwrap();
        assert_eq!(w.bounds(), &[(-3, 5)]);
        assert_eq!(w.len(), 9);
        let w = WindowSpec::parse("-1:1,0:2").unwrap();
        assert_eq!(w.dim(), 2);
        assert_eq!(w.points().count(), 9);
        assert!(matches!(WindowSpec::parse("4:1"), Err(WindowError::Inverted { .. })));
        assert!(matches!(WindowSpec::parse("4"), Err(WindowError::Syntax(_))));
        assert!(WindowSpec::parse("0:1,0:1,0:1").is_err());
    }

    #[test]
    fn window_geometry() {
        let w = WindowSpec::interval(-2, 7).unwrap();
        assert_eq!(w.half_width(), 2);
        assert!(w.contains(&LatticePoint::One(7)));
        assert!(!w.contains(&LatticePoint::One(8)));
        assert!(!w.contains(&LatticePoint::Two(0, 0)));
        let s = w.minkowski_sum(&WindowSpec::interval(-1, 1).unwrap()).unwrap();
        assert_eq!(s.bounds(), &[(-3, 8)]);
        assert_eq!(WindowSpec::interval(1, 4).unwrap().half_width(), -1);
        assert_eq!(w.to_string(), "-2:7");
    }

    #[test]
    fn point_arithmetic() {
        let p = LatticePoint::Two(1, -2) + LatticePoint::Two(3, 3);
        assert_eq!(p, LatticePoint::Two(4, 1));
        assert_eq!(p.sup_norm(), 4);
        assert!(LatticePoint::One(1).checked_add(LatticePoint::Two(0, 0)).is_none());
        assert_eq!(LatticePoint::from_coords(&[2]), Some(LatticePoint::One(2)));
        assert_eq!(LatticePoint::from_coords(&[1, 2, 3]), None);
    }
}
