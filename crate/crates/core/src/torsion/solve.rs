//! Exact intersection of two curves in the torus.
//!
//! `p(x) = Res_y(f, g)` locates the `x`-coordinates. Roots of unity among
//! them are found directly and the matching `y` values are read off from
//! `gcd(f(x₀, y), g(x₀, y))`. The total number of torus intersections is
//! counted by running Euclid in `(K[x]/h)[y]`, `h` the squarefree part of
//! `p`, splitting `h` whenever a leading coefficient is a zero divisor.

use alloc::vec::Vec;

use super::roots::cyclotomic_roots;
use super::TorsionPoint;
use crate::curves::TorusCurve;
use crate::cyclotomic::{check_level, lcm, CycloNum};
use crate::poly::{deg_y, resultant_y, specialize_x, trim_bi, BiPoly, UniPoly};
use crate::{Error, Result};

/// Common zeros of two curves with both coordinates nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    /// Common zeros made of roots of unity, sorted.
    pub torsion: Vec<TorsionPoint>,
    /// Number of the remaining distinct common zeros in the torus.
    pub nontorsion: usize,
}

struct Prepared {
    a: BiPoly,
    b: BiPoly,
    /// Squarefree part of the resultant with the factor `x^k` removed.
    h: UniPoly,
}

fn prepare(f: &TorusCurve, g: &TorusCurve) -> Result<Prepared> {
    let level = check_level(lcm(f.level(), g.level()))?;
    let (a, _) = f.to_bipoly(level)?;
    let (b, _) = g.to_bipoly(level)?;
    let content = a
        .iter()
        .chain(b.iter())
        .fold(UniPoly::zero(level), |acc, c| acc.gcd(c));
    if content.degree().unwrap_or(0) > 0 {
        return Err(Error::CommonComponent);
    }
    let r = resultant_y(&a, &b, level)?;
    if r.is_zero() {
        return Err(Error::CommonComponent);
    }
    let h = r.strip_x_power().0.squarefree_part();
    Ok(Prepared { a, b, h })
}

/// Solves `f = g = 0` in the torus. Fails with [`Error::CommonComponent`]
/// when the curves share a component.
pub fn intersect(f: &TorusCurve, g: &TorusCurve) -> Result<Intersection> {
    let prep = prepare(f, g)?;
    let mut torsion = Vec::new();
    for x in cyclotomic_roots(&prep.h)? {
        let x0 = CycloNum::root_of_unity(x, x.order())?;
        let fa = specialize_x(&prep.a, &x0)?;
        let fb = specialize_x(&prep.b, &x0)?;
        let common = fa.gcd(&fb);
        if common.is_zero() {
            return Err(Error::CommonComponent);
        }
        for y in cyclotomic_roots(&common)? {
            torsion.push(TorsionPoint::new(x, y));
        }
    }
    torsion.sort();
    let total = count_points(&prep)?;
    debug_assert!(total >= torsion.len());
    Ok(Intersection {
        nontorsion: total.saturating_sub(torsion.len()),
        torsion,
    })
}

/// Number of distinct common zeros of `f` and `g` in the torus.
pub fn torus_intersection_count(f: &TorusCurve, g: &TorusCurve) -> Result<usize> {
    count_points(&prepare(f, g)?)
}

fn count_points(prep: &Prepared) -> Result<usize> {
    if prep.h.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let mut total = 0;
    for (m, gy) in split_gcd(prep.h.clone(), prep.a.clone(), prep.b.clone())? {
        for (m, gy) in drop_zero_roots(m, gy)? {
            let dy = derivative_y(&gy, &m)?;
            for (m2, common) in split_gcd(m, gy.clone(), dy)? {
                let distinct = deg_y(&gy).unwrap_or(0) - deg_y(&common).unwrap_or(0);
                total += m2.degree().unwrap_or(0) * distinct;
            }
        }
    }
    Ok(total)
}

fn reduce(p: &[UniPoly], m: &UniPoly) -> Result<BiPoly> {
    let mut out = p.iter().map(|c| c.rem(m)).collect::<Result<BiPoly>>()?;
    trim_bi(&mut out);
    Ok(out)
}

fn derivative_y(p: &[UniPoly], m: &UniPoly) -> Result<BiPoly> {
    let out: BiPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&CycloNum::from_integer(k as i64)))
        .collect();
    reduce(&out, m)
}

/// Either an inverse of `c` modulo `m`, or a nontrivial factorization of `m`.
enum Unit {
    Inverse(UniPoly),
    Split(UniPoly, UniPoly),
}

fn unit(c: &UniPoly, m: &UniPoly) -> Result<Unit> {
    let (g, s) = c.gcd_with_cofactor(m);
    if g.degree() == Some(0) {
        return Ok(Unit::Inverse(s.rem(m)?));
    }
    let other = m.exact_div(&g)?;
    Ok(Unit::Split(g, other))
}

/// Makes `p` monic over `K[x]/m`, splitting `m` when needed.
fn monic_branches(m: UniPoly, p: BiPoly, out: &mut Vec<(UniPoly, BiPoly)>) -> Result<()> {
    let mut stack = alloc::vec![(m, p)];
    while let Some((m, p)) = stack.pop() {
        let p = reduce(&p, &m)?;
        let Some(d) = deg_y(&p) else {
            out.push((m, p));
            continue;
        };
        match unit(&p[d], &m)? {
            Unit::Inverse(inv) => {
                let q = p.iter().map(|c| c.mul(&inv)).collect::<BiPoly>();
                out.push((m.clone(), reduce(&q, &m)?));
            }
            Unit::Split(m1, m2) => {
                stack.push((m1, p.clone()));
                stack.push((m2, p));
            }
        }
    }
    Ok(())
}

/// `a mod b` for `b` monic in `y`, coefficients reduced modulo `m`.
fn rem_monic(a: &[UniPoly], b: &[UniPoly], m: &UniPoly) -> Result<BiPoly> {
    let mut r: BiPoly = a.to_vec();
    let db = deg_y(b).expect("nonzero divisor");
    while let Some(dr) = deg_y(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            r[shift + k] = r[shift + k].sub(&c.mul(bk)).rem(m)?;
        }
        trim_bi(&mut r);
    }
    Ok(r)
}

/// Monic gcd of `a` and `b` in `y` over each factor of the splitting of `m`.
fn split_gcd(m: UniPoly, a: BiPoly, b: BiPoly) -> Result<Vec<(UniPoly, BiPoly)>> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![(m, a, b)];
    'tasks: while let Some((m, a, b)) = stack.pop() {
        let mut a = reduce(&a, &m)?;
        let mut b = reduce(&b, &m)?;
        while let Some(d) = deg_y(&b) {
            match unit(&b[d], &m)? {
                Unit::Inverse(inv) => {
                    let bm = reduce(&b.iter().map(|c| c.mul(&inv)).collect::<BiPoly>(), &m)?;
                    let r = rem_monic(&a, &bm, &m)?;
                    a = bm;
                    b = r;
                }
                Unit::Split(m1, m2) => {
                    stack.push((m1, a.clone(), b.clone()));
                    stack.push((m2, a, b));
                    continue 'tasks;
                }
            }
        }
        monic_branches(m, a, &mut out)?;
    }
    Ok(out)
}

/// Divides out `y` while the constant term vanishes, splitting `m` so that
/// on every branch the constant term is either zero or a unit.
fn drop_zero_roots(m: UniPoly, p: BiPoly) -> Result<Vec<(UniPoly, BiPoly)>> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![(m, p)];
    while let Some((m, mut p)) = stack.pop() {
        p = reduce(&p, &m)?;
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
        if p.len() <= 1 {
            out.push((m, p));
            continue;
        }
        match unit(&p[0], &m)? {
            Unit::Inverse(_) => out.push((m, p)),
            Unit::Split(m1, m2) => {
                stack.push((m1, p.clone()));
                stack.push((m2, p));
            }
        }
    }
    Ok(out)
}
