//! Torsion points on curves in the two-torus: exact intersection, complete
//! enumeration through the conjugate families, uniform bounds and the
//! distribution of points over the family members.

mod oracle;
mod roots;
mod solve;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::ToPrimitive;

use crate::curves::{
    conjugate_family, minimal_translate, ConjugateFamily, FamilyCase, MinimalTranslate, TorusCurve,
};
use crate::cyclotomic::{lcm, CycloNum, RootOfUnity};
use crate::polytope::{difference_lattice, toric_bezout_bound};
use crate::{Error, Result};

pub use oracle::{brute_force_torsion, OrderScanner};
pub use roots::{cyclotomic_roots, cyclotomic_roots_of};
pub use solve::{intersect, torus_intersection_count, Intersection};

/// A pair of roots of unity, ordered by joint order and then exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    pub x: RootOfUnity,
    pub y: RootOfUnity,
}

impl TorsionPoint {
    pub fn new(x: RootOfUnity, y: RootOfUnity) -> Self {
        TorsionPoint { x, y }
    }

    /// `(ζ_n^j, ζ_n^k)`.
    pub fn from_exponents(n: u64, j: i64, k: i64) -> Result<Self> {
        Ok(TorsionPoint {
            x: RootOfUnity::new(n, j)?,
            y: RootOfUnity::new(n, k)?,
        })
    }

    /// Joint form `(n, j, k)` with `n = lcm(order x, order y)`.
    pub fn joint(&self) -> (u64, u64, u64) {
        let n = lcm(self.x.order(), self.y.order());
        let j = self.x.exponent_at(n).expect("order divides lcm");
        let k = self.y.exponent_at(n).expect("order divides lcm");
        (n, j, k)
    }

    /// Exponents as powers of `ζ_n`, when both orders divide `n`.
    pub fn exponents_at(&self, n: u64) -> Option<(u64, u64)> {
        Some((self.x.exponent_at(n)?, self.y.exponent_at(n)?))
    }

    /// The point moved by `(zx, zy)`.
    pub fn translate(&self, zx: RootOfUnity, zy: RootOfUnity) -> Self {
        TorsionPoint {
            x: self.x * zx,
            y: self.y * zy,
        }
    }
}

impl Ord for TorsionPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.joint().cmp(&other.joint())
    }
}

impl PartialOrd for TorsionPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The sub-torus translate `x^m·y^n = ζ`, which carries infinitely many
/// torsion points. With `n < 0` it reads `x^m = ζ·y^{−n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubtorusWitness {
    pub m: i64,
    pub n: i64,
    pub zeta: RootOfUnity,
}

impl SubtorusWitness {
    pub fn contains(&self, p: &TorsionPoint) -> bool {
        p.x.pow(self.m) * p.y.pow(self.n) == self.zeta
    }
}

impl fmt::Display for SubtorusWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pw = |v: &str, e: i64| match e {
            1 => String::from(v),
            _ => alloc::format!("{v}^{e}"),
        };
        let times = |z: RootOfUnity, rest: String| {
            if z == RootOfUnity::one() {
                rest
            } else {
                alloc::format!("{z}*{rest}")
            }
        };
        match (self.m, self.n) {
            (0, n) => write!(f, "{} = {}", pw("y", n), self.zeta),
            (m, 0) => write!(f, "{} = {}", pw("x", m), self.zeta),
            (m, n) if n > 0 => write!(f, "{}*{} = {}", pw("x", m), pw("y", n), self.zeta),
            (m, n) => write!(f, "{} = {}", pw("x", m), times(self.zeta, pw("y", -n))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationResult {
    Finite(Vec<TorsionPoint>),
    Infinite(SubtorusWitness),
}

impl EnumerationResult {
    pub fn points(&self) -> Option<&[TorsionPoint]> {
        match self {
            EnumerationResult::Finite(p) => Some(p),
            EnumerationResult::Infinite(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EnumerationResult::Infinite(_))
    }
}

/// Tuning knobs shared by the enumeration entry points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Modulus `D` of the translate search; see [`minimal_translate`].
    pub translate_modulus: Option<u64>,
}

/// Binomial curves: `f = x^a y^b · P(x^u y^v)`. Every torsion point lies on
/// `x^u y^v = t` for a root `t` of `P`, so the curve carries torsion points
/// iff `P` has a root of unity, and then infinitely many.
fn degenerate_case(f: &TorusCurve) -> Result<EnumerationResult> {
    let info = difference_lattice(f);
    if info.rank == 0 {
        return Ok(EnumerationResult::Finite(Vec::new()));
    }
    let (mut u, mut v) = info.basis[0];
    if u < 0 || (u == 0 && v < 0) {
        (u, v) = (-u, -v);
    }
    let (&(i0, j0), _) = f.terms().iter().next().expect("nonempty curve");
    let mut coeffs: Vec<CycloNum> = Vec::new();
    for (&(i, j), c) in f.terms() {
        let k = if u != 0 { (i - i0) / u } else { (j - j0) / v } as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, CycloNum::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(match cyclotomic_roots_of(&coeffs)?.first() {
        Some(&zeta) => EnumerationResult::Infinite(SubtorusWitness { m: u, n: v, zeta }),
        None => EnumerationResult::Finite(Vec::new()),
    })
}

/// Minimal translate, its family and the intersection of the translate
/// with every member.
#[derive(Clone, Debug)]
pub struct FamilyAnalysis {
    pub translate: MinimalTranslate,
    pub family: ConjugateFamily,
    pub intersections: Vec<Intersection>,
}

#[derive(Clone, Debug)]
pub enum Analysis {
    Degenerate(EnumerationResult),
    Family(FamilyAnalysis),
}

/// Runs the intersections one after another.
pub fn sequential(
    base: &TorusCurve,
    members: &[(String, TorusCurve)],
) -> Result<Vec<Intersection>> {
    members.iter().map(|(_, m)| intersect(base, m)).collect()
}

/// Full analysis of `f`. `run` computes `intersect(base, member)` for every
/// member in order; it exists so callers can spread the work over threads.
pub fn analyze<R>(f: &TorusCurve, opts: &Options, run: R) -> Result<Analysis>
where
    R: FnOnce(&TorusCurve, &[(String, TorusCurve)]) -> Result<Vec<Intersection>>,
{
    if difference_lattice(f).rank < 2 {
        return Ok(Analysis::Degenerate(degenerate_case(f)?));
    }
    let translate = minimal_translate(f, opts.translate_modulus)?;
    let family = conjugate_family(&translate.curve, translate.conductor)?;
    let intersections = run(&translate.curve, &family.members)?;
    Ok(Analysis::Family(FamilyAnalysis {
        translate,
        family,
        intersections,
    }))
}

impl FamilyAnalysis {
    /// Torsion points of one member's intersection in the coordinates of
    /// the original curve.
    fn member_points(&self, idx: usize) -> Vec<TorsionPoint> {
        let (zx, zy) = (self.translate.zx, self.translate.zy);
        let mut pts: Vec<_> = self.intersections[idx]
            .torsion
            .iter()
            .map(|p| p.translate(zx, zy))
            .collect();
        pts.sort();
        pts
    }

    pub fn points(&self) -> Vec<TorsionPoint> {
        let mut all: Vec<TorsionPoint> = (0..self.intersections.len())
            .flat_map(|i| self.member_points(i))
            .collect();
        all.sort();
        all.dedup();
        all
    }
}

impl Analysis {
    pub fn enumeration(&self) -> EnumerationResult {
        match self {
            Analysis::Degenerate(r) => r.clone(),
            Analysis::Family(fa) => EnumerationResult::Finite(fa.points()),
        }
    }
}

/// Every torsion point of `f = 0`, or a witness that there are infinitely
/// many.
pub fn enumerate_torsion(f: &TorusCurve) -> Result<EnumerationResult> {
    enumerate_torsion_with(f, &Options::default())
}

pub fn enumerate_torsion_with(f: &TorusCurve, opts: &Options) -> Result<EnumerationResult> {
    let result = analyze(f, opts, sequential)?.enumeration();
    if let EnumerationResult::Finite(pts) = &result {
        for p in pts {
            debug_assert!(f.vanishes_at(p.x, p.y)?, "enumerated point off the curve");
        }
    }
    Ok(result)
}

/// Bound attached to one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberBound {
    pub label: String,
    pub bound: u64,
    /// Set when the member is skipped in the sum.
    pub excluded: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub case: FamilyCase,
    /// Conductor of the minimal translate (of `f` itself for binomials).
    pub conductor: u64,
    pub members: Vec<MemberBound>,
    /// `None` when there are infinitely many torsion points.
    pub total: Option<u64>,
    pub notes: Vec<&'static str>,
}

pub const NOTE_NON_ABELIAN: &str =
    "coefficients outside the maximal abelian extension of Q allow at most 4 points; cyclotomic input never reaches that case";
pub const NOTE_OFF_TORUS: &str = "common zeros with the bilinear curve have a zero coordinate";

/// Uniform bound on the number of torsion points. For rank-2 curves it is
/// the sum of the toric Bézout bounds of `f` against its family members,
/// except that the sign twists `f1`, `f2` of a bilinear curve meet it only
/// off the torus and count 0.
pub fn bound_torsion(f: &TorusCurve) -> Result<BoundReport> {
    bound_torsion_with(f, &Options::default())
}

pub fn bound_torsion_with(f: &TorusCurve, opts: &Options) -> Result<BoundReport> {
    let notes = alloc::vec![NOTE_NON_ABELIAN];
    if difference_lattice(f).rank < 2 {
        let total = match degenerate_case(f)? {
            EnumerationResult::Finite(_) => Some(0),
            EnumerationResult::Infinite(_) => None,
        };
        return Ok(BoundReport {
            case: FamilyCase::II,
            conductor: f.level(),
            members: Vec::new(),
            total,
            notes,
        });
    }
    let translate = minimal_translate(f, opts.translate_modulus)?;
    let g = &translate.curve;
    let family = conjugate_family(g, translate.conductor)?;
    let mut members = Vec::new();
    for (label, m) in &family.members {
        let excluded =
            (g.is_bilinear() && (label == "f1" || label == "f2")).then_some(NOTE_OFF_TORUS);
        let bound = match excluded {
            Some(_) => 0,
            None => toric_bezout_bound(g, m)
                .to_integer()
                .to_u64()
                .expect("mixed areas are non-negative"),
        };
        members.push(MemberBound {
            label: label.clone(),
            bound,
            excluded,
        });
    }
    let total = members.iter().map(|m| m.bound).sum();
    Ok(BoundReport {
        case: family.case,
        conductor: translate.conductor,
        members,
        total: Some(total),
        notes,
    })
}

/// Torsion points of `f` found on one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionRow {
    pub label: String,
    pub points: Vec<TorsionPoint>,
    /// Further common zeros in the torus that are not torsion points.
    pub nontorsion: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub case: FamilyCase,
    pub conductor: u64,
    /// The translate `(zx, zy)` at which the family was built.
    pub translate: (RootOfUnity, RootOfUnity),
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    pub fn row(&self, label: &str) -> Option<&DistributionRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Number of (member, point) incidences.
    pub fn incidences(&self) -> usize {
        self.rows.iter().map(|r| r.points.len()).sum()
    }

    /// Distinct points over all members.
    pub fn distinct(&self) -> Vec<TorsionPoint> {
        let mut all: Vec<_> = self
            .rows
            .iter()
            .flat_map(|r| r.points.iter().copied())
            .collect();
        all.sort();
        all.dedup();
        all
    }
}

impl FamilyAnalysis {
    pub fn distribution(&self) -> DistributionTable {
        let rows = self
            .family
            .members
            .iter()
            .enumerate()
            .map(|(i, (label, _))| DistributionRow {
                label: label.clone(),
                points: self.member_points(i),
                nontorsion: self.intersections[i].nontorsion,
            })
            .collect();
        DistributionTable {
            case: self.family.case,
            conductor: self.translate.conductor,
            translate: (self.translate.zx, self.translate.zy),
            rows,
        }
    }
}

/// Which family members carry which torsion points of `f`.
pub fn distribute(f: &TorusCurve) -> Result<DistributionTable> {
    match analyze(f, &Options::default(), sequential)? {
        Analysis::Family(fa) => Ok(fa.distribution()),
        Analysis::Degenerate(EnumerationResult::Infinite(_)) => Err(Error::InfiniteFamily),
        Analysis::Degenerate(EnumerationResult::Finite(_)) => {
            Err(Error::DegenerateLattice(difference_lattice(f).rank))
        }
    }
}

/// A Galois conjugate of `ζ_N` of the form `±ζ_N` or `±ζ_N²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub sign: i8,
    pub square: bool,
    /// The image is `ζ_N^exponent`.
    pub exponent: u64,
}

/// `ζ_N ~ ζ_N²` for odd `N`, `ζ_N ~ −ζ_N²` for `N ≡ 2 mod 4` and
/// `ζ_N ~ −ζ_N` for `4 | N`.
pub fn conjugacy_witness(n: u64) -> Result<ConjugacyWitness> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let (sign, square, e) = match n % 4 {
        1 | 3 => (1, true, 2),
        2 => (-1, true, 2 + n / 2),
        _ => (-1, false, 1 + n / 2),
    };
    Ok(ConjugacyWitness {
        sign,
        square,
        exponent: e % n,
    })
}

#[cfg(test)]
mod tests;
