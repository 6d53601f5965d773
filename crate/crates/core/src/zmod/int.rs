//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Almost every entry met in practice is tiny, so values live in an `i64`
//! until an operation overflows and only then spill into a `BigInt`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    // never holds a value that fits in an i64
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Floor quotient and remainder with `0 <= r < |m|`; `m` must be nonzero.
    pub fn div_rem_euclid(&self, m: &Int) -> (Int, Int) {
        assert!(!m.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, m) {
            if let (Some(q), Some(r)) = (a.checked_div_euclid(*b), a.checked_rem_euclid(*b)) {
                return (Int::Small(q), Int::Small(r));
            }
        }
        let a = self.to_big();
        let b = m.to_big();
        let mut r = a.mod_floor(&b);
        if r.is_negative() {
            r += b.abs();
        }
        let q = (&a - &r) / &b;
        (Int::from_big(q), Int::from_big(r))
    }

    /// Remainder in `[0, |m|)`; with `m == 0` the value is returned unchanged.
    pub fn rem_euclid(&self, m: &Int) -> Int {
        if m.is_zero() {
            return self.clone();
        }
        self.div_rem_euclid(m).1
    }

    /// Quotient of an exact division. Panics when `m` does not divide `self`.
    pub fn div_exact(&self, m: &Int) -> Int {
        let (q, r) = self.div_rem_euclid(m);
        assert!(r.is_zero(), "inexact division {self} / {m}");
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem_euclid(self).is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let g = a.unsigned_abs().gcd(&b.unsigned_abs());
            if let Ok(v) = i64::try_from(g) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big().gcd(&other.to_big()))
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        (self * other).abs().div_exact(&self.gcd(other))
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `x a + y b = g`.
    pub fn ext_gcd(&self, other: &Int) -> (Int, Int, Int) {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = ext_gcd_i64(*a, *b) {
                return r;
            }
        }
        let e = self.to_big().extended_gcd(&other.to_big());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (Int::from_big(g), Int::from_big(x), Int::from_big(y))
    }

    /// `self -= a * b`, the inner step of every elimination loop.
    pub fn sub_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_sub(p) {
                    *self = Int::Small(v);
                    return;
                }
            }
        }
        let v = self.to_big() - a.to_big() * b.to_big();
        *self = Int::from_big(v);
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_add(p) {
                    *self = Int::Small(v);
                    return;
                }
            }
        }
        let v = self.to_big() + a.to_big() * b.to_big();
        *self = Int::from_big(v);
    }
}

fn ext_gcd_i64(a: i64, b: i64) -> Option<(Int, Int, Int)> {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    Some((
        Int::Small(i64::try_from(r0).ok()?),
        Int::Small(i64::try_from(x0).ok()?),
        Int::Small(i64::try_from(y0).ok()?),
    ))
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::from_big(BigInt::from_str(s)?))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident, $big:tt) => {
        impl $tr<&Int> for &Int {
            type Output = Int;
            fn $f(self, rhs: &Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $big rhs.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            fn $f(self, rhs: Int) -> Int {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Int> for Int {
            type Output = Int;
            fn $f(self, rhs: &Int) -> Int {
                (&self).$f(rhs)
            }
        }
        impl $tr<Int> for &Int {
            type Output = Int;
            fn $f(self, rhs: Int) -> Int {
                self.$f(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int::Small(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int::from_big(BigInt::from(v)))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Int, E> {
                Int::from_str(v).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_spills_to_big() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Big(_)));
        assert_eq!(&b - &Int::ONE, a);
        let sq = &b * &b;
        assert_eq!(sq.div_exact(&b), b);
    }

    #[test]
    fn euclidean_remainders_are_nonnegative() {
        let (q, r) = Int::from(-7).div_rem_euclid(&Int::from(3));
        assert_eq!((q, r), (Int::from(-3), Int::from(2)));
        let (q, r) = Int::from(-7).div_rem_euclid(&Int::from(-3));
        assert_eq!((q, r), (Int::from(3), Int::from(2)));
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, x, y) = Int::from(a).ext_gcd(&Int::from(b));
                assert_eq!(&(&x * &Int::from(a)) + &(&y * &Int::from(b)), g);
                assert_eq!(g, Int::from(a).gcd(&Int::from(b)));
            }
        }
    }
}
