//! Dual-mode scalars: exact rationals or binary floats.
//!
//! Every measure carries exactly one [`Mode`]. The arithmetic operators on
//! `&Scalar` panic when the two operands disagree on mode; the measure layer
//! checks modes up front and reports [`crate::MeasureError::ModeMismatch`]
//! instead, so the panics are unreachable from the public measure API.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arithmetic mode of a scalar or measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Arbitrary-precision rationals; every identity is decided exactly.
    Exact,
    /// IEEE-754 binary64.
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(ScalarParseError(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal: {0}")]
pub struct ScalarParseError(pub String);

/// A number in one of the two arithmetic modes.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_i64(1, mode)
    }

    pub fn from_i64(v: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(v))),
            Mode::Float => Scalar::Float(v as f64),
        }
    }

    /// `num / den` in the requested mode. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64, mode: Mode) -> Self {
        assert!(den != 0, "zero denominator");
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Mode::Float => Scalar::Float(num as f64 / den as f64),
        }
    }

    pub fn exact(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    /// Default absolute tolerance on residual atom weights: zero for exact
    /// arithmetic, `1e-9` for floats.
    pub fn default_tolerance(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::zero(Mode::Exact),
            Mode::Float => Scalar::Float(1e-9),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(v) => *v == 1.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(v) => *v < 0.0,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    /// Converts into `mode`. Floats become the exact rational of their binary
    /// value; rationals become the nearest float.
    pub fn to_mode(&self, mode: Mode) -> Self {
        match (self, mode) {
            (Scalar::Exact(_), Mode::Exact) | (Scalar::Float(_), Mode::Float) => self.clone(),
            (Scalar::Exact(r), Mode::Float) => Scalar::Float(rational_to_f64(r)),
            (Scalar::Float(v), Mode::Exact) => {
                Scalar::Exact(BigRational::from_float(*v).expect("non-finite float cannot become exact"))
            }
        }
    }

    /// Division; `None` when `rhs` is zero or the modes differ.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            return None;
        }
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(Scalar::Exact(a / b)),
            (Scalar::Float(a), Scalar::Float(b)) => Some(Scalar::Float(a / b)),
            _ => None,
        }
    }

    /// Non-negative integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(num_traits::pow(r.clone(), n as usize)),
            Scalar::Float(v) => Scalar::Float(v.powi(n as i32)),
        }
    }

    pub fn max<'a>(&'a self, other: &'a Scalar) -> &'a Scalar {
        match self.partial_cmp(other) {
            Some(Ordering::Less) => other,
            _ => self,
        }
    }

    /// Parses a decimal (`-0.25`, `1e-3`) or rational (`3/4`) literal.
    ///
    /// In exact mode decimal literals are read as the rational they spell,
    /// so `0.1` is exactly `1/10`.
    pub fn parse(text: &str, mode: Mode) -> Result<Scalar, ScalarParseError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(ScalarParseError("empty literal".into()));
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| ScalarParseError(t.to_string()))?;
            let q: BigInt = q.trim().parse().map_err(|_| ScalarParseError(t.to_string()))?;
            if q.is_zero() {
                return Err(ScalarParseError(format!("{t}: zero denominator")));
            }
            let r = BigRational::new(p, q);
            return Ok(match mode {
                Mode::Exact => Scalar::Exact(r),
                Mode::Float => Scalar::Float(rational_to_f64(&r)),
            });
        }
        match mode {
            Mode::Float => {
                let v: f64 = t.parse().map_err(|_| ScalarParseError(t.to_string()))?;
                if !v.is_finite() {
                    return Err(ScalarParseError(format!("{t}: not finite")));
                }
                Ok(Scalar::Float(v))
            }
            Mode::Exact => parse_decimal_exact(t).map(Scalar::Exact),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Numerator/denominator too large for a direct conversion: shift both.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

fn parse_decimal_exact(t: &str) -> Result<BigRational, ScalarParseError> {
    let err = || ScalarParseError(t.to_string());
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| err())? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

fn mixed(op: &str) -> ! {
    panic!("mixed arithmetic modes in scalar {op}")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => mixed("addition"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => mixed("subtraction"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => mixed("multiplication"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => *a += b,
            (Scalar::Float(a), Scalar::Float(b)) => *a += b,
            _ => mixed("addition"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Exact values print as `p/q` (or an integer); floats use the shortest
    /// representation that round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => write!(f, "{v:?}"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

/// Sum of a sequence of scalars in `mode`, folded in iteration order.
pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(items: I, mode: Mode) -> Scalar {
    items.into_iter().fold(Scalar::zero(mode), |acc, x| &acc + x)
}
