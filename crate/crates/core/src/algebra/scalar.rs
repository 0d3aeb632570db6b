use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number. `num_rational` keeps it reduced with a positive denominator.
pub type Rational = BigRational;

/// Field operations shared by the exact and the floating-point backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_int(n).ok_or_else(bad)?;
        let d: BigInt = parse_int(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) || whole.len() - whole_digits.len() > 1 {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, d));
    }
    Ok(BigRational::from_integer(parse_int(s).ok_or_else(bad)?))
}

/// Comma- or whitespace-separated rational literals, e.g. `"0, -1, 0, 0, 0, 1"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    let items: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    if items.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    items.into_iter().map(parse_rational).collect()
}

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Renders as `p` or `p/q`; inverse of [`parse_rational`].
pub fn render_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale through the bit lengths
        let n = r.numer();
        let d = r.denom();
        let shift = n.bits() as i64 - d.bits() as i64;
        let (n2, d2) = if shift > 0 {
            (n.clone(), d.clone() << shift as usize)
        } else {
            (n.clone() << (-shift) as usize, d.clone())
        };
        let q = BigRational::new(n2, d2).to_f64().unwrap_or(0.0);
        q * 2f64.powi(shift as i32)
    })
}

/// Serde adapter storing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Complex number with finite components.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ComplexScalar(Complex64);

impl ComplexScalar {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self(Complex64::new(re, im)))
        } else {
            Err(Error::Domain(format!("non-finite complex value ({re}, {im})")))
        }
    }

    /// Wraps a value already known to be finite (checked in debug builds).
    pub fn from_c64(z: Complex64) -> Self {
        debug_assert!(z.re.is_finite() && z.im.is_finite(), "non-finite {z}");
        Self(z)
    }

    pub fn real(re: f64) -> Self {
        Self::from_c64(Complex64::new(re, 0.0))
    }

    pub fn c64(self) -> Complex64 {
        self.0
    }
    pub fn re(self) -> f64 {
        self.0.re
    }
    pub fn im(self) -> f64 {
        self.0.im
    }
    pub fn norm(self) -> f64 {
        self.0.norm()
    }
    pub fn is_finite(self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

impl From<&Rational> for ComplexScalar {
    fn from(r: &Rational) -> Self {
        Self::real(rational_to_f64(r))
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! complex_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexScalar {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                Self(self.0.$m(rhs.0))
            }
        }
    };
}
complex_binop!(Add, add);
complex_binop!(Sub, sub);
complex_binop!(Mul, mul);
complex_binop!(Div, div);

impl Neg for ComplexScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Scalar for ComplexScalar {
    fn zero() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Self(Complex64::new(1.0, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Self(Complex64::new(v as f64, 0.0))
    }
}
