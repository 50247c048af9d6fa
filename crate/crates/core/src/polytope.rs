//! Lattice convex geometry on exponent vectors: supports, difference
//! lattices, Newton polygons, Minkowski sums and the toric Bézout bound.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Rational64;

use crate::curves::TorusCurve;

pub type LatticePoint = (i64, i64);

/// Integer span of the pairwise differences of a support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInfo {
    /// 0, 1 or 2.
    pub rank: u8,
    /// Whether the lattice is all of `Z²`. Always false below rank 2.
    pub full: bool,
    /// Echelon basis: `(g, h), (0, k)` at rank 2.
    pub basis: Vec<LatticePoint>,
}

/// Lattice generated by `p − points[0]` for all `p`.
pub fn lattice_of(points: &[LatticePoint]) -> LatticeInfo {
    let Some(&origin) = points.first() else {
        return LatticeInfo {
            rank: 0,
            full: false,
            basis: Vec::new(),
        };
    };
    // Row-reduce the differences into echelon form by extended gcd steps.
    let mut top: LatticePoint = (0, 0);
    let mut second: i64 = 0;
    for &(x, y) in points {
        let mut v = (x - origin.0, y - origin.1);
        if v.0 != 0 || top.0 != 0 {
            let ext = top.0.extended_gcd(&v.0);
            let g = ext.gcd;
            let new_top = (g, ext.x * top.1 + ext.y * v.1);
            // The combination (−v.0/g)·top + (top.0/g)·v kills the first entry.
            let (a, b) = (-v.0 / g, top.0 / g);
            let rest = a * top.1 + b * v.1;
            top = new_top;
            v = (0, rest);
        }
        second = second.gcd(&v.1);
    }
    if top.0 < 0 {
        top = (-top.0, -top.1);
    }
    if top.0 != 0 && second != 0 {
        top.1 = top.1.rem_euclid(second);
    }
    match (top.0 != 0, second != 0) {
        (true, true) => LatticeInfo {
            rank: 2,
            full: top.0 * second == 1,
            basis: alloc::vec![top, (0, second)],
        },
        (true, false) => LatticeInfo {
            rank: 1,
            full: false,
            basis: alloc::vec![top],
        },
        (false, true) => LatticeInfo {
            rank: 1,
            full: false,
            basis: alloc::vec![(0, second)],
        },
        (false, false) => LatticeInfo {
            rank: 0,
            full: false,
            basis: Vec::new(),
        },
    }
}

/// Exponent pairs carrying a nonzero coefficient.
pub fn support(f: &TorusCurve) -> BTreeSet<LatticePoint> {
    f.terms().keys().copied().collect()
}

pub fn difference_lattice(f: &TorusCurve) -> LatticeInfo {
    let pts: Vec<_> = f.terms().keys().copied().collect();
    lattice_of(&pts)
}

/// Convex lattice polygon given by its extreme points in counterclockwise
/// order, starting from the lowest-then-leftmost vertex. Points and segments
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

impl LatticePolytope {
    /// Convex hull (monotone chain) with collinear boundary points pruned.
    pub fn hull(points: impl IntoIterator<Item = LatticePoint>) -> Self {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() <= 1 {
            return LatticePolytope { vertices: pts };
        }
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let mut vertices = lower;
        let start = (0..vertices.len())
            .min_by_key(|&i| (vertices[i].1, vertices[i].0))
            .unwrap_or(0);
        vertices.rotate_left(start);
        LatticePolytope { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Euclidean area by the shoelace formula.
    pub fn area(&self) -> Rational64 {
        let n = self.vertices.len();
        if n < 3 {
            return Rational64::from_integer(0);
        }
        let twice: i64 = (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum();
        Rational64::new(twice.abs(), 2)
    }

    /// Dilation by a non-negative integer.
    pub fn scale(&self, k: i64) -> Self {
        Self::hull(self.vertices.iter().map(|&(x, y)| (k * x, k * y)))
    }
}

/// Newton polygon of a curve.
pub fn newton(f: &TorusCurve) -> LatticePolytope {
    LatticePolytope::hull(f.terms().keys().copied())
}

fn half(v: LatticePoint) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

/// Minkowski sum by merging the edge sequences in angular order.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    if p.is_empty() || q.is_empty() {
        return LatticePolytope {
            vertices: Vec::new(),
        };
    }
    let edges = |poly: &LatticePolytope| -> Vec<LatticePoint> {
        let v = &poly.vertices;
        if v.len() < 2 {
            return Vec::new();
        }
        (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                (b.0 - a.0, b.1 - a.1)
            })
            .collect()
    };
    let (ep, eq) = (edges(p), edges(q));
    let mut cur = (
        p.vertices[0].0 + q.vertices[0].0,
        p.vertices[0].1 + q.vertices[0].1,
    );
    let mut out = alloc::vec![cur];
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        let take_p = if i == ep.len() {
            false
        } else if j == eq.len() {
            true
        } else {
            let (a, b) = (ep[i], eq[j]);
            let (ha, hb) = (half(a), half(b));
            ha < hb || (ha == hb && (a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128) >= 0)
        };
        let e = if take_p {
            i += 1;
            ep[i - 1]
        } else {
            j += 1;
            eq[j - 1]
        };
        cur = (cur.0 + e.0, cur.1 + e.1);
        out.push(cur);
    }
    LatticePolytope::hull(out)
}

/// `Area(P + Q) − Area(P) − Area(Q)` for the Newton polygons of `f` and `g`,
/// which bounds the number of common zeros in the torus when the curves
/// share no component.
pub fn toric_bezout_bound(f: &TorusCurve, g: &TorusCurve) -> Rational64 {
    mixed_area(&newton(f), &newton(g))
}

pub fn mixed_area(p: &LatticePolytope, q: &LatticePolytope) -> Rational64 {
    minkowski_sum(p, q).area() - p.area() - q.area()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square(side: i64) -> LatticePolytope {
        LatticePolytope::hull([(0, 0), (side, 0), (0, side), (side, side)])
    }

    #[test]
    fn hull_prunes_interior_and_collinear_points() {
        let h = LatticePolytope::hull([(0, 0), (1, 0), (2, 0), (1, 1), (2, 2), (0, 2), (1, 2)]);
        assert_eq!(h.vertices(), &[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let seg = LatticePolytope::hull([(0, 0), (1, 1), (2, 2)]);
        assert_eq!(seg.vertices(), &[(0, 0), (2, 2)]);
        assert_eq!(LatticePolytope::hull([(3, 4)]).vertices(), &[(3, 4)]);
    }

    #[test]
    fn areas() {
        assert_eq!(square(1).area(), Rational64::from_integer(1));
        let tri = LatticePolytope::hull([(0, 0), (1, 0), (0, 1)]);
        assert_eq!(tri.area(), Rational64::new(1, 2));
        assert_eq!(
            LatticePolytope::hull([(0, 0), (3, 1)]).area(),
            Rational64::from_integer(0)
        );
    }

    #[test]
    fn minkowski_of_squares() {
        let s = minkowski_sum(&square(1), &square(2));
        assert_eq!(s, square(3));
        assert_eq!(s.area(), Rational64::from_integer(9));
        assert_eq!(
            mixed_area(&square(1), &square(2)),
            Rational64::from_integer(4)
        );
    }

    #[test]
    fn parallel_segments_have_zero_mixed_area() {
        let a = LatticePolytope::hull([(1, 0), (0, 1)]);
        assert_eq!(mixed_area(&a, &a), Rational64::from_integer(0));
        let tri = LatticePolytope::hull([(0, 0), (1, 0), (0, 1)]);
        assert_eq!(mixed_area(&tri, &tri), Rational64::from_integer(1));
    }

    #[test]
    fn lattices() {
        let full = lattice_of(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!((full.rank, full.full), (2, true));
        let diag = lattice_of(&[(1, 1), (0, 0)]);
        assert_eq!(diag.rank, 1);
        assert_eq!(diag.basis, alloc::vec![(1, 1)]);
        assert_eq!(lattice_of(&[(0, 0)]).rank, 0);
        let sparse = lattice_of(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!((sparse.rank, sparse.full), (2, false));
        let vertical = lattice_of(&[(0, 0), (0, 2), (0, 6)]);
        assert_eq!(vertical.basis, alloc::vec![(0, 2)]);
    }

    fn arb_poly() -> impl Strategy<Value = LatticePolytope> {
        proptest::collection::vec((-4i64..=4, -4i64..=4), 1..7).prop_map(LatticePolytope::hull)
    }

    proptest! {
        #[test]
        fn minkowski_matches_hull_of_pairwise_sums(p in arb_poly(), q in arb_poly()) {
            let brute = LatticePolytope::hull(
                p.vertices().iter().flat_map(|a| q.vertices().iter().map(move |b| (a.0 + b.0, a.1 + b.1))),
            );
            prop_assert_eq!(minkowski_sum(&p, &q), brute);
        }

        #[test]
        fn homothety_law(p in arb_poly()) {
            prop_assert_eq!(minkowski_sum(&p, &p).area(), p.area() * 4);
            prop_assert_eq!(minkowski_sum(&p, &p.scale(2)).area(), p.area() * 9);
        }

        #[test]
        fn mixed_area_is_symmetric_and_nonnegative(p in arb_poly(), q in arb_poly()) {
            let m = mixed_area(&p, &q);
            prop_assert_eq!(m, mixed_area(&q, &p));
            prop_assert!(m >= Rational64::from_integer(0));
            prop_assert!(m.is_integer());
        }
    }
}
