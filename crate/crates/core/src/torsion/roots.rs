//! Roots of unity among the roots of a polynomial over `Q(ζ_L)`.

use alloc::vec::Vec;

use crate::cyclotomic::{gcd, unit_angle, CycloNum, RootOfUnity};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// Relative size below which a floating-point value is handed to the exact
/// test. Rounding errors are many orders of magnitude smaller.
const PREFILTER: f64 = 1e-9;

fn totient_table(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// Distinct roots of unity `ζ` with `p(ζ) = 0`, sorted.
///
/// A root `ζ_n^j` has degree `φ(lcm(n, L))/φ(L)` over `Q(ζ_L)`, which is at
/// most `deg p`. Together with `φ(n) ≥ √(n/2)` this bounds the orders to
/// check; each candidate is screened numerically and confirmed exactly.
pub fn cyclotomic_roots(p: &UniPoly) -> Result<Vec<RootOfUnity>> {
    let (q, _) = p.strip_x_power();
    let Some(deg) = q.degree() else {
        return Err(Error::InfiniteFamily);
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let level = q.level();
    let deg = deg as u64;
    let coeffs: Vec<(f64, f64)> = q.coeffs().iter().map(CycloNum::to_complex).collect();
    let scale: f64 = q.coeffs().iter().map(CycloNum::abs_sum).sum();
    let phi_level = crate::cyclotomic::totient(level);
    let d = deg * phi_level;
    let bound = (2 * d * d) as usize;
    let phi = totient_table(bound.max(level as usize));
    let mut out = Vec::new();
    for n in 1..=bound as u64 {
        let g = gcd(n, level);
        if phi[n as usize] > deg * phi[g as usize] {
            continue;
        }
        for j in 0..n {
            if gcd(j, n) != 1 {
                continue;
            }
            let (s, c) = unit_angle(j, n);
            let (mut re, mut im) = (0.0, 0.0);
            for &(cr, ci) in coeffs.iter().rev() {
                let t = re * c - im * s + cr;
                im = re * s + im * c + ci;
                re = t;
            }
            if libm::hypot(re, im) > PREFILTER * scale {
                continue;
            }
            let z = CycloNum::zeta_pow(n, j as i64)?;
            if q.eval(&z)?.is_zero() {
                out.push(RootOfUnity::new(n, j as i64)?);
            }
        }
        if out.len() as u64 == deg {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Roots of unity among the roots of `c_0 + c_1 t + … + c_d t^d` where the
/// coefficients are given at possibly different levels.
pub fn cyclotomic_roots_of(coeffs: &[CycloNum]) -> Result<Vec<RootOfUnity>> {
    let level = coeffs
        .iter()
        .map(CycloNum::level)
        .fold(1, crate::cyclotomic::lcm);
    cyclotomic_roots(&UniPoly::new(level, coeffs.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(1, cs.iter().map(|&c| CycloNum::from_integer(c)).collect()).unwrap()
    }

    #[test]
    fn rational_cyclotomic_factors() {
        // (x² + x + 1)(x − 2)(x + 1)
        let p = int_poly(&[-2, -3, -2, 0, 1]);
        let roots = cyclotomic_roots(&p).unwrap();
        let expect = [
            RootOfUnity::new(2, 1),
            RootOfUnity::new(3, 1),
            RootOfUnity::new(3, 2),
        ];
        assert_eq!(roots, expect.map(|r| r.unwrap()));
        assert!(cyclotomic_roots(&int_poly(&[-2, 1])).unwrap().is_empty());
        assert!(cyclotomic_roots(&int_poly(&[5])).unwrap().is_empty());
    }

    #[test]
    fn roots_outside_the_coefficient_field() {
        // x² − ζ₃ has the roots ζ₃² and −ζ₃² = ζ₆.
        let z3 = CycloNum::zeta(3).unwrap();
        let p = UniPoly::new(3, alloc::vec![-z3, CycloNum::zero(), CycloNum::one()]).unwrap();
        let roots = cyclotomic_roots(&p).unwrap();
        assert_eq!(
            roots,
            [
                RootOfUnity::new(3, 2).unwrap(),
                RootOfUnity::new(6, 1).unwrap()
            ]
        );
        // x⁴ + 1 over Q: primitive 8th roots.
        let p = int_poly(&[1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_roots(&p).unwrap().len(), 4);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            cyclotomic_roots(&UniPoly::zero(1)),
            Err(Error::InfiniteFamily)
        );
    }
}
