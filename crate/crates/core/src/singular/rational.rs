//! Exact rationals over `i128` with checked arithmetic.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A reduced fraction with positive denominator. Every operation is checked;
/// overflow is reported instead of wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const OVERFLOW: Error = Error::Overflow("rational arithmetic");

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(OVERFLOW)?;
            den = den.checked_neg().ok_or(OVERFLOW)?;
        }
        Ok(Self { num, den })
    }

    pub fn integer(v: i128) -> Self {
        Self { num: v, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        // Cross-reduce by the denominators' gcd to keep intermediates small.
        let g = gcd(self.den, rhs.den);
        let l = self.den / g;
        let r = rhs.den / g;
        let a = self.num.checked_mul(r).ok_or(OVERFLOW)?;
        let b = rhs.num.checked_mul(l).ok_or(OVERFLOW)?;
        let num = a.checked_add(b).ok_or(OVERFLOW)?;
        let den = self.den.checked_mul(r).ok_or(OVERFLOW)?;
        Self::new(num, den)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self {
            num: self.num.checked_neg().ok_or(OVERFLOW)?,
            den: self.den,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(rhs.num / g2).ok_or(OVERFLOW)?;
        let den = (self.den / g2).checked_mul(rhs.den / g1).ok_or(OVERFLOW)?;
        Self::new(num, den)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::Input("division by zero".into()));
        }
        // checked_mul renormalises the sign of the reciprocal.
        self.checked_mul(Self {
            num: rhs.den,
            den: rhs.num,
        })
    }

    pub fn checked_pow(self, exp: u32) -> Result<Self> {
        Ok(Self {
            num: self.num.checked_pow(exp).ok_or(OVERFLOW)?,
            den: self.den.checked_pow(exp).ok_or(OVERFLOW)?,
        })
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::integer(v as i128)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive; widen through f64 only if the products
        // overflow, which cannot happen for the magnitudes used here.
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
