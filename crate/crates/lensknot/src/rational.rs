//! Exact rational arithmetic for lengths, areas, defects, and gradings.
//!
//! Every quantity attached to a diagram is an exact rational whose reduced
//! denominator divides `p`. `Frac` wraps [`num_rational::Rational64`], which
//! keeps values in lowest terms with a positive denominator, and serializes
//! as a compact string (`"4/5"`, `"-1"`) so reports stay readable and stable.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact fraction, always in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frac(Rational64);

impl Frac {
    pub const ZERO: Frac = Frac(Rational64::new_raw(0, 1));

    /// Builds `n/d`, reducing to lowest terms. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        Frac(Rational64::new(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        Frac(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Frac(self.0.abs())
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        *self - Frac::from_int(self.floor())
    }

    /// Reduces into `[0, m)` for a positive integer modulus `m`.
    pub fn rem_mod(&self, m: i64) -> Self {
        debug_assert!(m > 0);
        let q = (self.0 / Rational64::from_integer(m)).floor().to_integer();
        *self - Frac::from_int(q * m)
    }
}

impl From<i64> for Frac {
    fn from(n: i64) -> Self {
        Frac::from_int(n)
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, rhs: Frac) -> Frac {
        Frac(self.0 + rhs.0)
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, rhs: Frac) -> Frac {
        Frac(self.0 - rhs.0)
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, rhs: Frac) -> Frac {
        Frac(self.0 * rhs.0)
    }
}

impl Mul<i64> for Frac {
    type Output = Frac;
    fn mul(self, rhs: i64) -> Frac {
        Frac(self.0 * Rational64::from_integer(rhs))
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac(-self.0)
    }
}

impl AddAssign for Frac {
    fn add_assign(&mut self, rhs: Frac) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Frac {
    fn sub_assign(&mut self, rhs: Frac) {
        self.0 -= rhs.0;
    }
}

impl std::iter::Sum for Frac {
    fn sum<I: Iterator<Item = Frac>>(iter: I) -> Frac {
        iter.fold(Frac::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.splitn(2, '/');
        let n: i64 = parts
            .next()
            .ok_or("empty fraction")?
            .trim()
            .parse()
            .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let d: i64 = match parts.next() {
            Some(d) => d
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in {s:?}: {e}"))?,
            None => 1,
        };
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Frac::new(n, d))
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let f = Frac::new(4, 10);
        assert_eq!((f.numer(), f.denom()), (2, 5));
        let g = Frac::new(3, -9);
        assert_eq!((g.numer(), g.denom()), (-1, 3));
    }

    #[test]
    fn fract_is_nonnegative() {
        assert_eq!(Frac::new(-1, 5).fract(), Frac::new(4, 5));
        assert_eq!(Frac::new(7, 5).fract(), Frac::new(2, 5));
        assert_eq!(Frac::from_int(3).fract(), Frac::ZERO);
    }

    #[test]
    fn rem_mod_lands_in_range() {
        assert_eq!(Frac::new(19, 5).rem_mod(4), Frac::new(19, 5));
        assert_eq!(Frac::new(29, 5).rem_mod(4), Frac::new(9, 5));
        assert_eq!(Frac::new(-1, 5).rem_mod(4), Frac::new(19, 5));
    }

    #[test]
    fn display_round_trips() {
        for f in [Frac::new(1, 5), Frac::new(-4, 7), Frac::from_int(-3)] {
            let s = f.to_string();
            assert_eq!(s.parse::<Frac>().unwrap(), f);
        }
    }
}
