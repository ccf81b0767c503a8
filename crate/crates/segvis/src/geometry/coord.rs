//! Exact rational scalar.
//!
//! Values that fit a reduced `i64` fraction stay on the stack; anything larger
//! is promoted to a `BigRational`. The representation is canonical, so derived
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Coord {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(Box<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseCoordError(pub String);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Coord {
    pub fn zero() -> Coord {
        Coord::Small(0, 1)
    }

    pub fn one() -> Coord {
        Coord::Small(1, 1)
    }

    pub fn int(v: i64) -> Coord {
        Coord::Small(v, 1)
    }

    /// `num / den`; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Coord {
        assert!(den != 0, "zero denominator");
        Coord::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Coord {
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Coord::Small(n, d),
            _ => Coord::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Coord {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Coord::Small(n, d);
        }
        Coord::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Coord::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Coord::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Coord::Small(n, _) => BigInt::from(*n),
            Coord::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Coord::Small(_, d) => BigInt::from(*d),
            Coord::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coord::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Coord::Small(_, d) => *d == 1,
            Coord::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Coord::Small(n, _) => n.signum() as i32,
            Coord::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Coord {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Small(n, d) => *n as f64 / *d as f64,
            Coord::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Largest integer not above the value; panics outside the `i64` range.
    pub fn floor(&self) -> i64 {
        match self {
            Coord::Small(n, d) => n.div_euclid(*d),
            Coord::Big(b) => b.floor().to_integer().to_i64().expect("floor fits i64"),
        }
    }

    /// Arithmetic mean of two values.
    pub fn midpoint(a: &Coord, b: &Coord) -> Coord {
        &(a + b) / &Coord::int(2)
    }

    fn big_op(a: &Coord, b: &Coord, f: impl Fn(BigRational, BigRational) -> BigRational) -> Coord {
        Coord::from_big(f(a.to_big(), b.to_big()))
    }
}

impl Default for Coord {
    fn default() -> Self {
        Coord::zero()
    }
}

impl PartialEq for Coord {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coord::Small(a, b), Coord::Small(c, d)) => a == c && b == d,
            (Coord::Big(x), Coord::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Coord {}

impl Hash for Coord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Coord::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Coord::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coord::Small(a, b), Coord::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn add(self, rhs: &Coord) -> Coord {
        match (self, rhs) {
            (Coord::Small(a, b), Coord::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Coord::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_add(c * b) {
                    Some(n) => Coord::from_i128(n, b * d),
                    None => Coord::big_op(self, rhs, |x, y| x + y),
                }
            }
            _ => Coord::big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl<'a> Sub<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn sub(self, rhs: &Coord) -> Coord {
        match (self, rhs) {
            (Coord::Small(a, b), Coord::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_sub(*c) {
                        return Coord::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_sub(c * b) {
                    Some(n) => Coord::from_i128(n, b * d),
                    None => Coord::big_op(self, rhs, |x, y| x - y),
                }
            }
            _ => Coord::big_op(self, rhs, |x, y| x - y),
        }
    }
}

impl<'a> Mul<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn mul(self, rhs: &Coord) -> Coord {
        match (self, rhs) {
            (Coord::Small(a, b), Coord::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Coord::Small(s, 1);
                    }
                }
                Coord::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Coord::big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl<'a> Div<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn div(self, rhs: &Coord) -> Coord {
        assert!(!rhs.is_zero(), "division by zero");
        match (self, rhs) {
            (Coord::Small(a, b), Coord::Small(c, d)) => {
                Coord::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Coord::big_op(self, rhs, |x, y| x / y),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: Coord) -> Coord {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: &Coord) -> Coord {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        match self {
            Coord::Small(n, d) => match n.checked_neg() {
                Some(m) => Coord::Small(m, *d),
                None => Coord::from_big(-self.to_big()),
            },
            Coord::Big(b) => Coord::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        -&self
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::int(v)
    }
}

impl From<i32> for Coord {
    fn from(v: i32) -> Self {
        Coord::int(v as i64)
    }
}

impl fmt::Display for Coord {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Small(n, 1) => write!(f, "{n}"),
            Coord::Small(n, d) => write!(f, "{n}/{d}"),
            Coord::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Coord::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coord {
    type Err = ParseCoordError;

    /// Accepts `12`, `-3/4` and `0.125`; exponents are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCoordError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Coord::from_big(BigRational::new(p, q)));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            let neg = ip.starts_with('-');
            let digits_ok = |x: &str| x.chars().all(|c| c.is_ascii_digit());
            let ip_abs = ip.trim_start_matches(['-', '+']);
            if !digits_ok(ip_abs) || !digits_ok(fp) || (ip_abs.is_empty() && fp.is_empty()) {
                return Err(err());
            }
            let whole: BigInt = if ip_abs.is_empty() {
                BigInt::zero()
            } else {
                ip_abs.parse().map_err(|_| err())?
            };
            let frac: BigInt = if fp.is_empty() {
                BigInt::zero()
            } else {
                fp.parse().map_err(|_| err())?
            };
            let scale = num_traits::pow(BigInt::from(10), fp.len());
            let mut num = whole * &scale + frac;
            if neg {
                num = -num;
            }
            return Ok(Coord::from_big(BigRational::new(num, scale)));
        }
        let v: BigInt = t.parse().map_err(|_| err())?;
        Ok(Coord::from_big(BigRational::from_integer(v)))
    }
}

impl serde::Serialize for Coord {
    /// Text formats get `"p/q"`; binary formats get two's-complement limbs.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if s.is_human_readable() {
            s.serialize_str(&self.to_string())
        } else {
            use serde::ser::SerializeTuple;
            let mut t = s.serialize_tuple(2)?;
            t.serialize_element(&self.numer().to_signed_bytes_le())?;
            t.serialize_element(&self.denom().to_signed_bytes_le())?;
            t.end()
        }
    }
}

impl<'de> serde::Deserialize<'de> for Coord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        if d.is_human_readable() {
            let s = String::deserialize(d)?;
            s.parse().map_err(serde::de::Error::custom)
        } else {
            let (n, q): (Vec<u8>, Vec<u8>) = serde::Deserialize::deserialize(d)?;
            let n = BigInt::from_signed_bytes_le(&n);
            let q = BigInt::from_signed_bytes_le(&q);
            if q.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            Ok(Coord::from_big(BigRational::new(n, q)))
        }
    }
}
