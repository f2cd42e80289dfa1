//! Exact rationals with power-of-two denominators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// `num / 2^exp`, kept in lowest terms.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

/// Largest exponent that can be represented; bounded so that aligning two
/// values never shifts past the width of the numerator.
pub const MAX_EXP: u32 = 100;

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };

    pub fn from_int(n: i64) -> Self {
        Dyadic { num: n as i128, exp: 0 }
    }

    /// `2^-e`, or `None` when `e` exceeds [`MAX_EXP`].
    pub fn pow2_neg(e: u32) -> Option<Self> {
        (e <= MAX_EXP).then(|| Dyadic { num: 1, exp: e }.reduced())
    }

    /// `num / 2^exp`.
    pub fn new(num: i128, exp: u32) -> Option<Self> {
        (exp <= MAX_EXP).then(|| Dyadic { num, exp }.reduced())
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    fn reduced(mut self) -> Self {
        if self.num == 0 {
            self.exp = 0;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
        self
    }

    fn aligned(self, other: Self) -> Option<(i128, i128, u32)> {
        let exp = self.exp.max(other.exp);
        let a = self.num.checked_mul(1i128.checked_shl(exp - self.exp)?)?;
        let b = other.num.checked_mul(1i128.checked_shl(exp - other.exp)?)?;
        Some((a, b, exp))
    }

    pub fn checked_add(self, other: Self) -> Option<Self> {
        let (a, b, exp) = self.aligned(other)?;
        Some(Dyadic { num: a.checked_add(b)?, exp }.reduced())
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        self.checked_add(-other)
    }

    pub fn checked_mul_int(self, k: i64) -> Option<Self> {
        Some(
            Dyadic {
                num: self.num.checked_mul(k as i128)?,
                exp: self.exp,
            }
            .reduced(),
        )
    }

    /// Exact when the value is an integer.
    pub fn to_integer(self) -> Option<i64> {
        (self.exp == 0).then_some(self.num).and_then(|n| i64::try_from(n).ok())
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 2f64.powi(self.exp as i32)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, other: Dyadic) -> Dyadic {
        self.checked_add(other).expect("dyadic overflow")
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, other: Dyadic) -> Dyadic {
        self.checked_sub(other).expect("dyadic overflow")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other).expect("exponents are bounded");
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u128 << self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let q = Dyadic::pow2_neg(2).unwrap();
        let sum = (0..4).fold(Dyadic::ZERO, |acc, _| acc + q);
        assert_eq!(sum, Dyadic::from_int(1));
        assert_eq!(sum.to_integer(), Some(1));
        let x = Dyadic::from_int(7) - Dyadic::new(8, 3).unwrap();
        assert_eq!(x, Dyadic::from_int(6));
        assert_eq!(Dyadic::new(-3, 3).unwrap().to_string(), "-3/8");
    }

    #[test]
    fn ordering() {
        let a = Dyadic::new(3, 3).unwrap();
        let b = Dyadic::new(1, 1).unwrap();
        assert!(a < b);
        assert!(-b < -a);
        assert_eq!(Dyadic::new(4, 3).unwrap(), b);
    }

    #[test]
    fn bounded_exponent() {
        assert!(Dyadic::pow2_neg(MAX_EXP + 1).is_none());
    }
}
