use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// An exact colouring count. `log2` is derived and never used for comparisons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn from_u64(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }

    /// `base^exp` exactly.
    pub fn pow(base: u64, exp: usize) -> Self {
        BigCount(num_traits::pow(BigUint::from(base), exp))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `None` for zero.
    pub fn log2(&self) -> Option<f64> {
        if self.0.is_zero() {
            return None;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return Some(self.0.to_f64().expect("finite").log2());
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().expect("fits");
        Some(top.log2() + shift as f64)
    }

    /// `self >= 2^x`. Decided by bit length whenever `2^floor(x)` and
    /// `2^ceil(x)` separate the value, which covers every integral `x`; only
    /// inside that band does it fall back to comparing `log2`.
    pub fn at_least_pow2(&self, x: f64) -> bool {
        if x <= 0.0 {
            return !self.0.is_zero();
        }
        let bits = self.0.bits() as f64; // value lies in [2^(bits-1), 2^bits)
        if bits - 1.0 >= x.ceil() {
            return true;
        }
        if bits <= x.floor() {
            return false;
        }
        self.log2().is_some_and(|l| l >= x)
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl std::ops::Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl std::ops::Mul for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigCount({})", self.0)
    }
}
