//! Exact scalars: the rationals and the Gaussian rationals `ℚ(i)`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline and combined in
/// `i128`; everything else falls back to [`BigRational`]. The representation is canonical,
/// so equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn fits(x: i128) -> Option<i64> {
    i64::try_from(x).ok().filter(|&v| v != i64::MIN)
}

impl Rational {
    /// `n/d`; panics if `d = 0`.
    pub fn new(n: i64, d: i64) -> Self {
        Self::from_wide(Ratio::new(i128::from(n), i128::from(d)))
    }

    fn from_wide(r: Ratio<i128>) -> Self {
        match (fits(*r.numer()), fits(*r.denom())) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn wide(&self) -> Option<Ratio<i128>> {
        match self.0 {
            Repr::Small(n, d) => Some(Ratio::new_raw(i128::from(n), i128::from(d))),
            Repr::Big(_) => None,
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn combine(&self, rhs: &Self, small: impl Fn(Ratio<i128>, Ratio<i128>) -> Ratio<i128>, big: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        match (self.wide(), rhs.wide()) {
            (Some(a), Some(b)) => Self::from_wide(small(a, b)),
            _ => Self::from_big(big(self.to_big(), rhs.to_big())),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational(Repr::Small(0, 1))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::new(n, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.wide(), other.wide()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

// Products of two inline parts stay below 2^126, so sums of two such products fit in i128.
macro_rules! rational_op {
    ($tr:ident, $m:ident) => {
        impl $tr for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                self.combine(rhs, |a, b| $tr::$m(a, b), |a, b| $tr::$m(a, b))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                $tr::$m(&self, rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $tr::$m(self, &rhs)
            }
        }
    };
}
rational_op!(Add, add);
rational_op!(Sub, sub);
rational_op!(Mul, mul);
rational_op!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(r) => Rational(Repr::Big(-r)),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A field with exact arithmetic.
///
/// All linear algebra in the crate is generic over this trait. It is
/// implemented for [`Rational`] and [`Scalar`].
pub trait Field: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self {
        Self::one().div(self)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::default()
    }
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!Field::is_zero(rhs), "division by zero");
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from(n), Rational::default())
    }

    /// `a/b + (c/d)·i`; panics if a denominator is zero.
    pub fn from_ratios(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar::new(
            Rational::new(a, b),
            Rational::new(c, d),
        )
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::default())
    }

    pub fn i() -> Self {
        Scalar::new(Rational::default(), Field::one())
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    pub fn is_real(&self) -> bool {
        Field::is_zero(&self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn one() -> Self {
        Scalar::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.im)
    }
    fn is_one(&self) -> bool {
        Field::is_one(&self.re) && Field::is_zero(&self.im)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!Field::is_zero(&n), "division by zero");
        Scalar::new(&self.re / &n, -&self.im / &n)
    }
}

/// `a + b` skipping the work when either side is zero.
fn add_q(a: &Rational, b: &Rational) -> Rational {
    if Field::is_zero(a) {
        b.clone()
    } else if Field::is_zero(b) {
        a.clone()
    } else {
        a + b
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(add_q(&self.re, &rhs.re), add_q(&self.im, &rhs.im))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let im = if Field::is_zero(&rhs.im) { self.im.clone() } else { &self.im - &rhs.im };
        let re = if Field::is_zero(&rhs.re) { self.re.clone() } else { &self.re - &rhs.re };
        Scalar::new(re, im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if Field::is_one(self) {
            return rhs.clone();
        }
        if Field::is_one(rhs) {
            return self.clone();
        }
        if Field::is_zero(&self.im) && Field::is_zero(&rhs.im) {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if Field::is_zero(&rhs.im) {
            assert!(!Field::is_zero(&rhs.re), "division by zero");
            return Scalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &Field::inv(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

/// Formats as `a/b`, `c/d*i` or `a/b+c/d*i`, omitting zero parts and unit denominators.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = Field::is_zero(&self.re);
        let im0 = Field::is_zero(&self.im);
        if im0 {
            return write!(f, "{}", self.re);
        }
        let im = format!("{}*i", self.im.abs());
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if re0 {
            if self.im.is_negative() {
                write!(f, "-{im}")
            } else {
                write!(f, "{im}")
            }
        } else {
            write!(f, "{}{sign}{im}", self.re)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::from(BigRational::new(n, d)))
}

/// Imaginary coefficient of a term ending in `i` (with or without `*`).
fn parse_imag(s: &str) -> Option<Rational> {
    let body = s.strip_suffix('i')?;
    let body = body.strip_suffix('*').unwrap_or(body).trim();
    match body {
        "" | "+" => Some(Field::one()),
        "-" => Some(-<Rational as Field>::one()),
        _ => parse_rational(body),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a`, `a/b`, `c/d*i`, `i`, `-i` and `a/b±c/d*i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("malformed scalar {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('i') {
            return parse_rational(&t).map(Scalar::from_rational).ok_or_else(bad);
        }
        // Split at the last sign that is not leading.
        let split = t
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        match split {
            None => parse_imag(&t).map(|im| Scalar::new(Rational::default(), im)).ok_or_else(bad),
            Some(k) => {
                let re = parse_rational(&t[..k]).ok_or_else(bad)?;
                let im = parse_imag(&t[k..]).ok_or_else(bad)?;
                Ok(Scalar::new(re, im))
            }
        }
    }
}

/// Serialized as the canonical string form.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts the string forms of [`FromStr`] and JSON integers.
impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Scalar::from_int(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(s("1/2+3/4*i"), Scalar::from_ratios(1, 2, 3, 4));
        assert_eq!(s("2/4"), Scalar::from_ratios(1, 2, 0, 1));
        assert_eq!(s("-i"), Scalar::from_ratios(0, 1, -1, 1));
        assert_eq!(s("3-i"), Scalar::from_ratios(3, 1, -1, 1));
        assert_eq!(s("-1/3-2/5*i").to_string(), "-1/3-2/5*i");
        assert_eq!(Scalar::from_ratios(0, 1, 7, 2).to_string(), "7/2*i");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1+".parse::<Scalar>().is_err());
    }

    #[test]
    fn rational_overflow_falls_back() {
        let big = |r: &Rational| r.to_big();
        let m = Rational::from(i64::MAX);
        let sq = &m * &m;
        assert_eq!(big(&sq), big(&m) * big(&m));
        assert_eq!(&sq / &m, m);
        assert!(matches!((&sq / &m).0, Repr::Small(..)));
        let min = Rational::from(i64::MIN);
        assert_eq!(big(&-&min), -big(&min));
        assert_eq!(&min - &min, Rational::zero());
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
        assert!(sq > m && -&sq < min);
        assert_eq!(Rational::new(-6, -4).to_string(), "3/2");
    }

    #[test]
    fn field_ops() {
        let a = s("1+2*i");
        let b = s("3-i");
        assert_eq!(&a * &b, s("5+5*i"));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &Field::inv(&a), Scalar::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }
}
