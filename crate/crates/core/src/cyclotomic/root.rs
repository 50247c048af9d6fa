use core::fmt;
use core::ops::Mul;

use super::arith::{gcd, lcm};
use crate::{Error, Result};

/// `ζ_n^k` in canonical form: `gcd(k, n) = 1`, `0 ≤ k < n`, and the
/// identity is `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    /// Canonicalizes `ζ_n^k`; the result has order `n / gcd(n, k)`.
    pub fn new(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let k = k.rem_euclid(n as i64) as u64;
        if k == 0 {
            return Ok(Self::one());
        }
        let g = gcd(n, k);
        Ok(RootOfUnity {
            order: n / g,
            exponent: k / g,
        })
    }

    pub const fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    pub const fn minus_one() -> Self {
        RootOfUnity {
            order: 2,
            exponent: 1,
        }
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    /// Exponent of `self` as a power of `ζ_n`, when `order | n`.
    pub fn exponent_at(self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.order)
            .then(|| self.exponent * (n / self.order))
    }

    pub fn inv(self) -> Self {
        Self::new(self.order, -(self.exponent as i64)).expect("positive order")
    }

    pub fn pow(self, e: i64) -> Self {
        let n = self.order as i128;
        let k = (self.exponent as i128 * e as i128).rem_euclid(n);
        Self::new(self.order, k as i64).expect("positive order")
    }

    /// Position on the unit circle, in turns.
    pub fn turns(self) -> f64 {
        self.exponent as f64 / self.order as f64
    }
}

impl Mul for RootOfUnity {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        let n = lcm(self.order, other.order);
        let k = self.exponent * (n / self.order) + other.exponent * (n / other.order);
        Self::new(n, (k % n) as i64).expect("positive order")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (n, 1) => write!(f, "ζ{n}"),
            (n, k) => write!(f, "ζ{n}^{k}"),
        }
    }
}
