//! Elements of cyclotomic fields in the power basis.

use alloc::borrow::Cow;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{
    check_level, cyclotomic_poly, factorize, lcm, level_limit, mod_inverse, totient,
};
use super::linalg;
use super::root::RootOfUnity;
use crate::{Error, Result};

/// An exact element of `Q(ζ_N)`.
///
/// Stored as integer numerators over a common positive denominator, in the
/// basis `1, ζ_N, …, ζ_N^{φ(N)−1}`, with `gcd(den, num…) = 1`. Because the
/// reduction is canonical, two values at the same level are equal exactly
/// when their fields are equal. Values at different levels are compared
/// after lifting to a common level.
#[derive(Clone)]
pub struct CycloNum {
    level: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Reduces `poly` (constant term first) modulo `Φ_level` in place, leaving
/// exactly `φ(level)` coefficients.
pub(crate) fn reduce_mod_phi(level: u64, poly: &mut Vec<BigInt>) {
    let phi = cyclotomic_poly(level);
    let deg = phi.len() - 1;
    let n = level as usize;
    if poly.len() > n {
        // ζ^n = 1
        let tail = poly.split_off(n);
        for (i, c) in tail.into_iter().enumerate() {
            if !c.is_zero() {
                poly[i % n] += c;
            }
        }
    }
    let taps: Vec<(usize, i64)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    for i in (deg..poly.len()).rev() {
        let c = core::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for &(j, d) in &taps {
            poly[i - deg + j] -= &c * d;
        }
    }
    poly.truncate(deg);
    poly.resize(deg, BigInt::zero());
}

impl CycloNum {
    /// Builds `Σ poly[i] ζ^i / den`, reducing modulo `Φ_level`.
    pub(crate) fn from_dense(level: u64, mut poly: Vec<BigInt>, den: BigInt) -> Self {
        reduce_mod_phi(level, &mut poly);
        let mut out = CycloNum {
            level,
            num: poly,
            den,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        CycloNum {
            level: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let (n, d) = q.into_raw();
        let mut out = CycloNum {
            level: 1,
            num: vec![n],
            den: d,
        };
        out.normalize();
        out
    }

    /// `Σ coords[i] ζ_level^i`; any length is accepted and reduced.
    pub fn from_coords(level: u64, coords: &[BigRational]) -> Result<Self> {
        check_level(level)?;
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_dense(level, poly, den))
    }

    /// Integer combination `Σ coords[i] ζ_level^i`.
    pub fn from_int_coords(level: u64, coords: &[i64]) -> Result<Self> {
        check_level(level)?;
        let poly = coords.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self::from_dense(level, poly, BigInt::one()))
    }

    /// `ζ_level^k`, exponent taken modulo the level.
    pub fn zeta_pow(level: u64, k: i64) -> Result<Self> {
        check_level(level)?;
        let e = k.rem_euclid(level as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Ok(Self::from_dense(level, poly, BigInt::one()))
    }

    pub fn zeta(level: u64) -> Result<Self> {
        Self::zeta_pow(level, 1)
    }

    /// The root of unity `r` expressed at `level`. Works whenever
    /// `r ∈ Q(ζ_level)`, i.e. `order(r)` divides `lcm(2, level)`.
    pub fn root_of_unity(r: RootOfUnity, level: u64) -> Result<Self> {
        check_level(level)?;
        let n = r.order();
        let k = r.exponent();
        if level.is_multiple_of(n) {
            return Self::zeta_pow(level, (k * (level / n)) as i64);
        }
        if level % 2 == 1 && (2 * level).is_multiple_of(n) {
            // ζ_{2N} = −ζ_N^{(N+1)/2}
            let j = k * (2 * level / n);
            let base = Self::zeta_pow(
                level,
                ((j % (2 * level)) * level.div_ceil(2) % level) as i64,
            )?;
            return Ok(if j % 2 == 1 { -base } else { base });
        }
        Err(Error::LevelMismatch { from: n, to: level })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Rational coordinates in the power basis, length `φ(level)`.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        let c0 = self.num.first().cloned().unwrap_or_default();
        Some(BigRational::new(c0, self.den.clone()))
    }

    /// Re-expresses the value at a multiple of its level.
    pub fn lift(&self, to: u64) -> Result<Self> {
        if to == self.level {
            return Ok(self.clone());
        }
        if to == 0 || !to.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch {
                from: self.level,
                to,
            });
        }
        check_level(to)?;
        let step = (to / self.level) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().saturating_sub(1)) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_dense(to, poly, self.den.clone()))
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> Result<(Cow<'a, Self>, Cow<'a, Self>)> {
        if self.level == other.level {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        let l = lcm(self.level, other.level);
        check_level(l)?;
        let a = if self.level == l {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.lift(l)?)
        };
        let b = if other.level == l {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.lift(l)?)
        };
        Ok((a, b))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    fn add_same(&self, other: &Self, subtract: bool) -> Self {
        let (poly, den) = if self.den == other.den {
            let poly = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (poly, self.den.clone())
        } else {
            let poly = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (poly, &self.den * &other.den)
        };
        let mut out = CycloNum {
            level: self.level,
            num: poly,
            den,
        };
        out.normalize();
        out
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycloNum {
                level: self.level,
                num: vec![BigInt::zero(); self.num.len()],
                den: BigInt::one(),
            };
        }
        if let Some(poly) = small_product(self.level, &self.num, &other.num) {
            let mut out = CycloNum {
                level: self.level,
                num: poly,
                den: &self.den * &other.den,
            };
            out.normalize();
            return out;
        }
        let mut poly = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.level, poly, &self.den * &other.den)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.num.len() == 1 || self.num.iter().skip(1).all(Zero::is_zero) {
            let c0 = &self.num[0];
            let mut out = CycloNum {
                level: self.level,
                num: vec![BigInt::zero(); self.num.len()],
                den: c0.clone(),
            };
            out.num[0] = self.den.clone();
            out.normalize();
            return Ok(out);
        }
        // Solve (x · ζ^j)_j · v = den·e₀ for the coordinates v of x⁻¹.
        let n = self.num.len();
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n + 1); n];
        let mut col = CycloNum {
            level: self.level,
            num: self.num.clone(),
            den: BigInt::one(),
        };
        for j in 0..n {
            if j > 0 {
                // unit denominator, so no content is divided out
                col = col.mul_zeta_pow(1);
            }
            for (i, c) in col.num.iter().enumerate() {
                rows[i].push(c.clone());
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(if i == 0 {
                self.den.clone()
            } else {
                BigInt::zero()
            });
        }
        let (v, det) = linalg::bareiss_solve(rows).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_dense(self.level, v, det))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloNum::one().lift(self.level)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        Ok(acc)
    }

    /// Multiplies by `ζ_level^k`.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.level as usize;
        let shift = k.rem_euclid(self.level as i64) as usize;
        let mut poly = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[(i + shift) % n] += c;
            }
        }
        Self::from_dense(self.level, poly, self.den.clone())
    }

    /// Image under `ζ_level ↦ ζ_level^e`. Only a field automorphism when
    /// `gcd(e, level) = 1`; see [`super::GaloisMap`].
    pub(crate) fn map_exponent(&self, e: u64) -> Self {
        let n = self.level;
        let mut poly = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[((i as u64 * e) % n) as usize] += c;
            }
        }
        Self::from_dense(n, poly, self.den.clone())
    }

    /// Floating-point value at `ζ_level = e^{2πi/level}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = ratio_to_f64(c, &self.den, den);
            let (s, co) = unit_angle(i as u64, self.level);
            re += v * co;
            im += v * s;
        }
        (re, im)
    }

    /// `Σ |coords|`, the scale of the rounding error in [`Self::to_complex`].
    pub fn abs_sum(&self) -> f64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .map(|c| ratio_to_f64(c, &self.den, den).abs())
            .sum()
    }

    /// Projection onto `Q(ζ_{level/p})`: the average of the Galois conjugates
    /// over that subfield, expressed at the smaller level.
    fn project(&self, p: u64) -> Self {
        let n = self.level;
        let m = n / p;
        let mut poly = vec![BigInt::zero(); m as usize];
        if m.is_multiple_of(p) {
            for (i, c) in self.num.iter().enumerate() {
                let i = i as u64;
                if i.is_multiple_of(p) && !c.is_zero() {
                    poly[(i / p) as usize] += c;
                }
            }
            return Self::from_dense(m, poly, self.den.clone());
        }
        // ζ_n^i = ζ_m^{s·i} ζ_p^{t·i} with s·p + t·m = 1.
        let s = mod_inverse(p as i64, m).unwrap_or(0);
        let weight = BigInt::from(p - 1);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = i as u64;
            if i.is_multiple_of(p) {
                poly[((i / p) % m) as usize] += c * &weight;
            } else {
                poly[((s * i) % m) as usize] -= c;
            }
        }
        Self::from_dense(m, poly, &self.den * weight)
    }

    /// Smallest level containing the value.
    pub fn conductor(&self) -> u64 {
        self.conductor_reduce().level
    }

    /// The same value at its conductor. Idempotent; lifting the result back
    /// to the original level reproduces the input.
    pub fn conductor_reduce(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            if cur.level == 1 {
                return cur;
            }
            for (p, _) in factorize(cur.level) {
                let cand = cur.project(p);
                let back = cand.lift(cur.level).expect("lift to a known level");
                if back.num == cur.num && back.den == cur.den {
                    cur = cand;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Recognizes roots of unity: the ones in `Q(ζ_N)` are `±ζ_N^k`.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if !self.den.is_one() || self.is_zero() {
            return None;
        }
        let n = self.level;
        let full = lcm(2, n);
        let scale = self.abs_sum();
        let (re, im) = self.to_complex();
        // Float error is at most a few ulps per term; the margins below are
        // orders of magnitude wider than that.
        let tol = 1e-9 * (1.0 + scale);
        if scale.is_finite() && tol < 1e-3 / full as f64 {
            let modulus = libm::hypot(re, im);
            if (modulus - 1.0).abs() > tol {
                return None;
            }
            let turns = libm::atan2(im, re) / core::f64::consts::TAU;
            let k = libm::round(turns * full as f64) as i64;
            let r = RootOfUnity::new(full, k).ok()?;
            let candidate = Self::root_of_unity(r, n).ok()?;
            return (candidate == *self).then_some(r);
        }
        (0..full as i64).find_map(|k| {
            let r = RootOfUnity::new(full, k).ok()?;
            let candidate = Self::root_of_unity(r, n).ok()?;
            (candidate == *self).then_some(r)
        })
    }

    /// Writes the value as an expression in `var` (highest power first),
    /// e.g. `-z^7 - z^6 + z^2` or `3/2*z - 1`.
    pub fn to_expression(&self, var: &str) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let a = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.is_integer() {
                alloc::format!("{}", a.numer())
            } else {
                alloc::format!("{}/{}", a.numer(), a.denom())
            };
            match i {
                0 => out.push_str(&coeff),
                _ => {
                    if !a.is_one() {
                        let _ = write!(out, "{coeff}*");
                    }
                    out.push_str(var);
                    if i > 1 {
                        let _ = write!(out, "^{i}");
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Degree `φ(level)` of the ambient field.
    pub fn degree(&self) -> u64 {
        totient(self.level)
    }
}

/// Product modulo `Φ_level` in machine integers; `None` on overflow.
fn small_product(level: u64, a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a: Vec<i64> = a.iter().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let mut poly = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            poly[i + j] = poly[i + j].checked_add(x as i128 * y as i128)?;
        }
    }
    let phi = cyclotomic_poly(level);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = core::mem::take(&mut poly[i]);
        if c == 0 {
            continue;
        }
        for (j, &d) in phi[..deg].iter().enumerate() {
            if d != 0 {
                poly[i - deg + j] = poly[i - deg + j].checked_sub(c.checked_mul(d as i128)?)?;
            }
        }
    }
    poly.truncate(deg);
    poly.resize(deg, 0);
    Some(poly.into_iter().map(BigInt::from).collect())
}

fn ratio_to_f64(n: &BigInt, d: &BigInt, d_f64: f64) -> f64 {
    match (n.to_f64(), d_f64.is_finite()) {
        (Some(x), true) if x.is_finite() => x / d_f64,
        _ => num_rational::Ratio::new_raw(n.clone(), d.clone())
            .to_f64()
            .unwrap_or(f64::NAN),
    }
}

/// `(sin, cos)` of `2π·k/n`.
pub(crate) fn unit_angle(k: u64, n: u64) -> (f64, f64) {
    let k = k % n;
    let theta = core::f64::consts::TAU * (k as f64) / (n as f64);
    (libm::sin(theta), libm::cos(theta))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.den == other.den && self.num == other.num;
        }
        let l = lcm(self.level, other.level);
        if l <= level_limit() {
            if let (Ok(a), Ok(b)) = (self.lift(l), other.lift(l)) {
                return a.num == b.num && a.den == b.den;
            }
        }
        let (a, b) = (self.conductor_reduce(), other.conductor_reduce());
        a.level == b.level && a.num == b.num && a.den == b.den
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.level, self.to_expression("z"))
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression("z"))
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        CycloNum::from_integer(n)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in &mut self.num {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -self.clone()
    }
}

// Operator sugar panics when the common level exceeds the level limit; use
// the `checked_*` methods where that can happen.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("cyclotomic level limit exceeded")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
