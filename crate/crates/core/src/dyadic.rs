//! Exact dyadic rationals (integer numerator over a power of two).
//!
//! Danger values are sums of powers of 1/2, so every quantity the game
//! engine tracks is representable exactly. Arithmetic never rounds, and
//! comparisons are total, which is what strategy tie-breaking relies on.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// `numerator / 2^exponent` in canonical form: the numerator is odd or zero,
/// and the exponent is zero whenever the numerator is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicValue {
    numerator: i64,
    exponent: u32,
}

impl DyadicValue {
    pub const ZERO: DyadicValue = DyadicValue { numerator: 0, exponent: 0 };
    pub const ONE: DyadicValue = DyadicValue { numerator: 1, exponent: 0 };

    pub fn new(numerator: i64, exponent: u32) -> Self {
        let mut v = DyadicValue { numerator, exponent };
        v.normalize();
        v
    }

    pub fn from_int(n: i64) -> Self {
        DyadicValue { numerator: n, exponent: 0 }
    }

    /// `2^-k`, the Danger of an untouched vertex with `k` free edges.
    pub fn pow2_neg(k: u32) -> Self {
        DyadicValue { numerator: 1, exponent: k }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn normalize(&mut self) {
        if self.numerator == 0 {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator % 2 == 0 {
            self.numerator /= 2;
            self.exponent -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// True when the value is an integer (canonical exponent zero).
    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    /// The integer value, if this is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.numerator)
    }

    /// Multiply by `2^k` (k may be negative).
    pub fn scale_pow2(&self, k: i32) -> Self {
        if self.numerator == 0 {
            return *self;
        }
        if k >= 0 {
            let k = k as u32;
            if self.exponent >= k {
                DyadicValue { numerator: self.numerator, exponent: self.exponent - k }
            } else {
                let shift = k - self.exponent;
                DyadicValue::new(self.numerator.checked_shl(shift).expect("dyadic overflow"), 0)
            }
        } else {
            DyadicValue { numerator: self.numerator, exponent: self.exponent + (-k) as u32 }
        }
    }

    /// Numerator/denominator form, e.g. `(3, 4)` for 3/4.
    pub fn as_fraction(&self) -> (i64, i64) {
        (self.numerator, 1i64.checked_shl(self.exponent).expect("denominator overflow"))
    }
}

impl Add for DyadicValue {
    type Output = DyadicValue;
    fn add(self, rhs: DyadicValue) -> DyadicValue {
        let exp = self.exponent.max(rhs.exponent);
        let a = self
            .numerator
            .checked_shl(exp - self.exponent)
            .expect("dyadic overflow");
        let b = rhs
            .numerator
            .checked_shl(exp - rhs.exponent)
            .expect("dyadic overflow");
        DyadicValue::new(a.checked_add(b).expect("dyadic overflow"), exp)
    }
}

impl Sub for DyadicValue {
    type Output = DyadicValue;
    fn sub(self, rhs: DyadicValue) -> DyadicValue {
        self + (-rhs)
    }
}

impl Neg for DyadicValue {
    type Output = DyadicValue;
    fn neg(self) -> DyadicValue {
        DyadicValue { numerator: -self.numerator, exponent: self.exponent }
    }
}

impl AddAssign for DyadicValue {
    fn add_assign(&mut self, rhs: DyadicValue) {
        *self = *self + rhs;
    }
}

impl SubAssign for DyadicValue {
    fn sub_assign(&mut self, rhs: DyadicValue) {
        *self = *self - rhs;
    }
}

impl PartialOrd for DyadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exponent.max(other.exponent);
        let a = (self.numerator as i128) << (exp - self.exponent);
        let b = (other.numerator as i128) << (exp - other.exponent);
        a.cmp(&b)
    }
}

impl fmt::Display for DyadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            let (n, d) = self.as_fraction();
            write!(f, "{}/{}", n, d)
        }
    }
}

impl Serialize for DyadicValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (n, d) = self.as_fraction();
        serializer.serialize_str(&format!("{}/{}", n, d))
    }
}
