//! Exhaustive search over all pairs of roots of unity up to a given order.

use alloc::vec::Vec;

use super::TorsionPoint;
use crate::curves::TorusCurve;
use crate::cyclotomic::{gcd, unit_angle, RootOfUnity};
use crate::{Error, Result};

const PREFILTER: f64 = 1e-9;

/// Scans the points `(ζ_n^j, ζ_n^k)` of exact joint order `n` on a curve.
///
/// Each point is first evaluated in floating point; only points where the
/// value is below `1e-9·Σ|c|` are checked exactly, and only exact zeros are
/// reported. Rounding errors stay far below that threshold, so no zero is
/// lost.
#[derive(Clone, Debug)]
pub struct OrderScanner<'a> {
    curve: &'a TorusCurve,
    terms: Vec<((i64, i64), (f64, f64))>,
    tol: f64,
}

impl<'a> OrderScanner<'a> {
    pub fn new(curve: &'a TorusCurve) -> Self {
        let terms = curve
            .terms()
            .iter()
            .map(|(&k, c)| (k, c.to_complex()))
            .collect();
        let scale: f64 = curve.terms().values().map(|c| c.abs_sum()).sum();
        OrderScanner {
            curve,
            terms,
            tol: PREFILTER * scale,
        }
    }

    pub fn scan(&self, n: u64) -> Result<Vec<TorsionPoint>> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let table: Vec<(f64, f64)> = (0..n).map(|k| unit_angle(k, n)).collect();
        let ni = n as i64;
        let mut out = Vec::new();
        for j in 0..n {
            let gj = gcd(j, n);
            for k in 0..n {
                if gcd(gj, k) != 1 {
                    continue;
                }
                let (mut re, mut im) = (0.0, 0.0);
                for &((a, b), (cr, ci)) in &self.terms {
                    let e = (a * j as i64 + b * k as i64).rem_euclid(ni) as usize;
                    let (s, c) = table[e];
                    re += cr * c - ci * s;
                    im += cr * s + ci * c;
                }
                if libm::hypot(re, im) > self.tol {
                    continue;
                }
                let x = RootOfUnity::new(n, j as i64)?;
                let y = RootOfUnity::new(n, k as i64)?;
                if self.curve.vanishes_at(x, y)? {
                    out.push(TorsionPoint::new(x, y));
                }
            }
        }
        Ok(out)
    }
}

/// All torsion points of joint order at most `max_order`, sorted.
pub fn brute_force_torsion(f: &TorusCurve, max_order: u64) -> Result<Vec<TorsionPoint>> {
    if max_order == 0 {
        return Err(Error::ZeroOrder);
    }
    let scanner = OrderScanner::new(f);
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(scanner.scan(n)?);
    }
    out.sort();
    Ok(out)
}
