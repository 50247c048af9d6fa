use super::arith::{check_level, gcd};
use super::num::CycloNum;
use crate::{Error, Result};

/// The automorphism `ζ_N ↦ ζ_N^e` of `Q(ζ_N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisMap {
    level: u64,
    exponent: u64,
}

impl GaloisMap {
    pub fn new(level: u64, exponent: i64) -> Result<Self> {
        check_level(level)?;
        let e = exponent.rem_euclid(level as i64) as u64;
        if gcd(e, level) != 1 && level != 1 {
            return Err(Error::NotAUnit { level, exponent });
        }
        Ok(GaloisMap {
            level,
            exponent: if level == 1 { 0 } else { e },
        })
    }

    pub fn identity(level: u64) -> Result<Self> {
        Self::new(level, 1)
    }

    pub fn level(self) -> u64 {
        self.level
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    pub fn is_identity(self) -> bool {
        self.level == 1 || self.exponent == 1
    }

    pub fn compose(self, other: Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                from: other.level,
                to: self.level,
            });
        }
        Self::new(
            self.level,
            ((self.exponent * other.exponent) % self.level) as i64,
        )
    }

    /// Applies the map. `x` is first lifted to the map's level; values whose
    /// level does not divide it are conductor-reduced first.
    pub fn apply(self, x: &CycloNum) -> Result<CycloNum> {
        let x = if self.level.is_multiple_of(x.level()) {
            x.lift(self.level)?
        } else {
            let r = x.conductor_reduce();
            if !self.level.is_multiple_of(r.level()) {
                return Err(Error::LevelMismatch {
                    from: x.level(),
                    to: self.level,
                });
            }
            r.lift(self.level)?
        };
        if self.is_identity() {
            return Ok(x);
        }
        Ok(x.map_exponent(self.exponent))
    }
}
