//! Polynomials with cyclotomic coefficients.
//!
//! [`UniPoly`] is a dense univariate polynomial over a fixed `Q(ζ_L)`.
//! Bivariate polynomials are handled as slices of [`UniPoly`] in `x`,
//! indexed by the power of `y`, which is the shape resultants want.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::{check_level, lcm, CycloNum, GaloisMap};
use crate::{Error, Result};

/// Dense polynomial over `Q(ζ_level)`, constant term first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    level: u64,
    coeffs: Vec<CycloNum>,
}

impl UniPoly {
    pub fn new(level: u64, coeffs: Vec<CycloNum>) -> Result<Self> {
        check_level(level)?;
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.lift(level))
            .collect::<Result<Vec<_>>>()?;
        let mut p = UniPoly { level, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(level: u64) -> Self {
        UniPoly {
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: CycloNum, level: u64) -> Result<Self> {
        Self::new(level, vec![c])
    }

    pub fn one(level: u64) -> Self {
        Self::constant(CycloNum::one(), level).expect("valid level")
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: CycloNum, k: usize, level: u64) -> Result<Self> {
        let mut coeffs = vec![CycloNum::zero().lift(level)?; k + 1];
        coeffs[k] = c.lift(level)?;
        Self::new(level, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(CycloNum::is_zero) {
            self.coeffs.pop();
        }
    }

    fn zero_coeff(&self) -> CycloNum {
        CycloNum::zero().lift(self.level).expect("valid level")
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloNum {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.zero_coeff())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&CycloNum> {
        self.coeffs.last()
    }

    pub fn lift(&self, level: u64) -> Result<Self> {
        Self::new(level, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut p = UniPoly {
            level: self.level,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.level);
        }
        let mut coeffs = vec![self.zero_coeff(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        let mut p = UniPoly {
            level: self.level,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut p = UniPoly {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    /// Euclidean division: `self = q·other + r` with `deg r < deg other`.
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        let d = other.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= d {
            return Ok((UniPoly::zero(self.level), self.clone()));
        }
        let inv = other.coeffs[d].inv()?;
        let mut q = vec![self.zero_coeff(); r.len() - d];
        for i in (0..q.len()).rev() {
            let c = &r[i + d] * &inv;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    if !b.is_zero() {
                        r[i + j] = &r[i + j] - &(&c * b);
                    }
                }
            }
            q[i] = c;
        }
        r.truncate(d);
        let mut q = UniPoly {
            level: self.level,
            coeffs: q,
        };
        let mut r = UniPoly {
            level: self.level,
            coeffs: r,
        };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    pub fn rem(&self, other: &Self) -> Result<Self> {
        Ok(self.div_rem(other)?.1)
    }

    /// Division that is known to be exact.
    pub fn exact_div(&self, other: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(other)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn gcd_with_cofactor(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m).unwrap_or_else(|_| self.clone()));
        let (mut s0, mut s1) = (UniPoly::zero(self.level), UniPoly::one(self.level));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        match r0.lead() {
            None => (r0, s0),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv))
            }
        }
    }

    /// Inverse modulo `m`, if `self` is coprime to it.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s) = self.gcd_with_cofactor(m);
        (g.degree() == Some(0)).then(|| s.rem(m).expect("nonzero modulus"))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &CycloNum::from_integer(i as i64))
            .collect();
        let mut p = UniPoly {
            level: self.level,
            coeffs,
        };
        p.trim();
        p
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("nonzero gcd").monic()
    }

    /// Splits off the largest power of `x`: returns `(self / x^k, k)`.
    pub fn strip_x_power(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == 0 || self.is_zero() {
            return (self.clone(), 0);
        }
        (
            UniPoly {
                level: self.level,
                coeffs: self.coeffs[k..].to_vec(),
            },
            k,
        )
    }

    /// Horner evaluation; the point may live at any level.
    pub fn eval(&self, x: &CycloNum) -> Result<CycloNum> {
        let mut acc = CycloNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Ok(acc)
    }

    /// Coefficientwise Galois image.
    pub fn galois(&self, s: GaloisMap) -> Result<Self> {
        let level = lcm(self.level, s.level());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| s.apply(&c.lift(level)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(level, coeffs)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}](", self.level)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·x^{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// Bivariate polynomial as coefficients of `y^k` in `K[x]`.
pub type BiPoly = Vec<UniPoly>;

pub(crate) fn trim_bi(p: &mut BiPoly) {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
}

/// Degree in `y`, `None` for zero.
pub fn deg_y(p: &[UniPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Exchanges the roles of `x` and `y`.
pub fn swap_xy(p: &[UniPoly], level: u64) -> BiPoly {
    let dx = p.iter().filter_map(UniPoly::degree).max();
    let Some(dx) = dx else { return Vec::new() };
    let zero = CycloNum::zero().lift(level).expect("valid level");
    let mut rows = vec![vec![zero; p.len()]; dx + 1];
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            rows[i][j] = c.clone();
        }
    }
    let mut out: BiPoly = rows
        .into_iter()
        .map(|r| UniPoly::new(level, r).expect("valid level"))
        .collect();
    trim_bi(&mut out);
    out
}

/// Substitutes `x = x0` into every coefficient, giving a polynomial in `y`
/// at level `lcm(level, level(x0))`.
pub fn specialize_x(p: &[UniPoly], x0: &CycloNum) -> Result<UniPoly> {
    let level = p.iter().map(UniPoly::level).fold(x0.level(), lcm);
    let coeffs = p
        .iter()
        .map(|c| c.eval(x0)?.lift(level))
        .collect::<Result<Vec<_>>>()?;
    UniPoly::new(level, coeffs)
}

/// Resultant with respect to `y`, by fraction-free (Bareiss) elimination
/// of the Sylvester matrix over `K[x]`.
pub fn resultant_y(a: &[UniPoly], b: &[UniPoly], level: u64) -> Result<UniPoly> {
    let (Some(m), Some(n)) = (deg_y(a), deg_y(b)) else {
        return Ok(UniPoly::zero(level));
    };
    let size = m + n;
    if size == 0 {
        return Ok(UniPoly::one(level));
    }
    let zero = UniPoly::zero(level);
    let mut mat = vec![vec![zero; size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = a[m - k].lift(level)?;
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = b[n - k].lift(level)?;
        }
    }
    bareiss_det(mat, level)
}

fn bareiss_det(mut mat: Vec<Vec<UniPoly>>, level: u64) -> Result<UniPoly> {
    let size = mat.len();
    let mut prev = UniPoly::one(level);
    let mut negate = false;
    for k in 0..size.saturating_sub(1) {
        let Some(pivot) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return Ok(UniPoly::zero(level));
        };
        if pivot != k {
            mat.swap(pivot, k);
            negate = !negate;
        }
        let (head, tail) = mat.split_at_mut(k + 1);
        let pr = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..size {
                let v = row[j].mul(&pr[k]).sub(&row[k].mul(&pr[j]));
                row[j] = v.exact_div(&prev)?;
            }
            row[k] = UniPoly::zero(level);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycloNum {
        CycloNum::from_integer(n)
    }

    fn p(level: u64, cs: &[i64]) -> UniPoly {
        UniPoly::new(level, cs.iter().map(|&v| c(v)).collect()).unwrap()
    }

    #[test]
    fn division_and_gcd() {
        // (x − 1)(x + 2) and (x − 1)(x − 3)
        let a = p(1, &[-2, 1, 1]);
        let b = p(1, &[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(1, &[-1, 1]));
        let (q, r) = a.div_rem(&p(1, &[-1, 1])).unwrap();
        assert_eq!(q, p(1, &[2, 1]));
        assert!(r.is_zero());
        let inv = p(1, &[2, 1]).inverse_mod(&p(1, &[-1, 1])).unwrap();
        assert_eq!(
            inv,
            p(1, &[1]).scale(&CycloNum::from_rational(num_rational::BigRational::new(
                1.into(),
                3.into()
            )))
        );
    }

    #[test]
    fn squarefree_and_strip() {
        // x^2 (x − 1)^3
        let mut f = p(1, &[0, 0, 1]);
        for _ in 0..3 {
            f = f.mul(&p(1, &[-1, 1]));
        }
        let (g, k) = f.strip_x_power();
        assert_eq!(k, 2);
        assert_eq!(g.squarefree_part(), p(1, &[-1, 1]));
    }

    #[test]
    fn resultant_of_lines() {
        // a = y − x, b = y + x − 2 → Res_y = (−x) − (x − 2) up to sign: zero at x = 1
        let a = vec![p(1, &[0, -1]), p(1, &[1])];
        let b = vec![p(1, &[-2, 1]), p(1, &[1])];
        let r = resultant_y(&a, &b, 1).unwrap();
        assert_eq!(r.degree(), Some(1));
        assert!(r.eval(&c(1)).unwrap().is_zero());
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        // Res(y^2 − x, y − 3) = 9 − x (monic a: Res = Π a(root of b) up to sign)
        let a = vec![p(1, &[0, -1]), UniPoly::zero(1), p(1, &[1])];
        let b = vec![p(1, &[-3]), p(1, &[1])];
        let r = resultant_y(&a, &b, 1).unwrap();
        assert_eq!(r, p(1, &[9, -1]));
        let r2 = resultant_y(&b, &a, 1).unwrap();
        assert_eq!(r2, p(1, &[9, -1]));
    }

    #[test]
    fn swap_and_specialize() {
        // x·y + 2 as rows in y: [2, x]
        let f = vec![p(1, &[2]), p(1, &[0, 1])];
        let g = swap_xy(&f, 1);
        assert_eq!(g, vec![p(1, &[2]), p(1, &[0, 1])]);
        let s = specialize_x(&f, &c(3)).unwrap();
        assert_eq!(s, p(1, &[2, 3]));
    }
}
