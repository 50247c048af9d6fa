use alloc::string::ToString;
use alloc::vec::Vec;

use super::*;
use crate::curves::{graph_curve, translate_curve, MobiusMap};
use crate::fixtures;

fn int(n: i64) -> CycloNum {
    CycloNum::from_integer(n)
}

fn curve(terms: &[((i64, i64), CycloNum)]) -> TorusCurve {
    TorusCurve::new(terms.iter().cloned()).unwrap()
}

fn pt(n: u64, j: i64, k: i64) -> TorsionPoint {
    TorsionPoint::from_exponents(n, j, k).unwrap()
}

fn golden(level: u64, list: &[(i64, i64)]) -> Vec<TorsionPoint> {
    let mut v: Vec<_> = list.iter().map(|&(j, k)| pt(level, j, k)).collect();
    v.sort();
    v
}

#[test]
fn point_ordering_uses_the_joint_form() {
    let p = pt(30, 3, 9);
    assert_eq!(p.joint(), (10, 1, 3));
    assert_eq!(p.exponents_at(30), Some((3, 9)));
    assert!(pt(1, 0, 0) < pt(6, 1, 5));
    assert!(pt(6, 1, 5) < pt(6, 5, 1));
}

#[test]
fn line_through_sixth_roots() {
    let f = curve(&[((1, 0), int(1)), ((0, 1), int(1)), ((0, 0), int(-1))]);
    let expect = alloc::vec![pt(6, 1, 5), pt(6, 5, 1)];
    assert_eq!(
        enumerate_torsion(&f).unwrap(),
        EnumerationResult::Finite(expect.clone())
    );
    assert_eq!(brute_force_torsion(&f, 12).unwrap(), expect);
}

#[test]
fn diagonal_is_infinite() {
    let f = graph_curve(&MobiusMap::identity());
    let EnumerationResult::Infinite(w) = enumerate_torsion(&f).unwrap() else {
        panic!("x = y has infinitely many torsion points");
    };
    assert_eq!((w.m.abs(), w.n.abs(), w.zeta), (1, 1, RootOfUnity::one()));
    assert!(w.contains(&pt(7, 3, 3)));
    assert_eq!(w.to_string(), "x = y");
    assert_eq!(bound_torsion(&f).unwrap().total, None);
}

#[test]
fn binomials() {
    let f = curve(&[((1, 1), int(1)), ((0, 0), int(-2))]);
    assert_eq!(
        enumerate_torsion(&f).unwrap(),
        EnumerationResult::Finite(Vec::new())
    );
    let report = bound_torsion(&f).unwrap();
    assert_eq!((report.case, report.total), (FamilyCase::II, Some(0)));
    // x²y⁴ + x·y² + 1 = P(x·y²) with P(t) = t² + t + 1.
    let f = curve(&[((2, 4), int(1)), ((1, 2), int(1)), ((0, 0), int(1))]);
    let EnumerationResult::Infinite(w) = enumerate_torsion(&f).unwrap() else {
        panic!("expected a sub-torus");
    };
    assert_eq!((w.m, w.n), (1, 2));
    assert_eq!(w.zeta.order(), 3);
    let p = TorsionPoint::new(RootOfUnity::new(3, 1).unwrap(), RootOfUnity::one());
    assert!(w.contains(&p) || w.contains(&TorsionPoint::new(p.x.inv(), p.y)));
    assert_eq!(
        enumerate_torsion(&curve(&[((3, 1), int(5))])).unwrap(),
        EnumerationResult::Finite(Vec::new())
    );
}

#[test]
fn oracle_counts_a_truncated_family() {
    // Points of x·y = ζ₃ whose coordinates are both powers of one ζ_n,
    // n ≤ 12, counted with exact fractions of a turn.
    let mut expect = alloc::collections::BTreeSet::new();
    for n in 1..=12i64 {
        for j in 0..n {
            let k = (n / 3 - j).rem_euclid(n);
            if n % 3 == 0 {
                let g = num_integer::gcd(num_integer::gcd(j, k), n);
                expect.insert((n / g, j / g, k / g));
            }
        }
    }
    let f = curve(&[((1, 1), int(1)), ((0, 0), -CycloNum::zeta(3).unwrap())]);
    let got = brute_force_torsion(&f, 12).unwrap();
    assert_eq!(got.len(), expect.len());
    assert_eq!(got.len(), 18);
    for p in &got {
        let (n, j, k) = p.joint();
        assert!(expect.contains(&(n as i64, j as i64, k as i64)));
    }
}

#[test]
fn first_example_intersections() {
    let f = graph_curve(&fixtures::gamma1());
    let fam = conjugate_family(&f, 5).unwrap();
    let x3 = intersect(&f, &fam.members[2].1).unwrap();
    assert_eq!(x3.torsion, golden(30, &[(3, 9), (18, 24)]));
    let x5 = intersect(&f, &fam.members[4].1).unwrap();
    assert_eq!(
        x5.torsion,
        golden(30, &[(2, 5), (4, 13), (14, 23), (22, 25)])
    );
    let x1 = intersect(&f, &fam.members[0].1).unwrap();
    assert_eq!((x1.torsion.len(), x1.nontorsion), (0, 0));
}

#[test]
fn first_example_enumeration_and_bound() {
    let f = graph_curve(&fixtures::gamma1());
    let pts = enumerate_torsion(&f).unwrap();
    assert_eq!(
        pts,
        EnumerationResult::Finite(golden(30, fixtures::S1_POINTS))
    );
    let report = bound_torsion(&f).unwrap();
    assert_eq!(
        (report.case, report.conductor, report.total),
        (FamilyCase::IV, 5, Some(18))
    );
    let bounds: Vec<u64> = report.members.iter().map(|m| m.bound).collect();
    assert_eq!(bounds, [0, 0, 2, 4, 4, 4, 4]);
}

#[test]
fn conjugacy_witnesses() {
    let w = conjugacy_witness(5).unwrap();
    assert_eq!((w.sign, w.square, w.exponent), (1, true, 2));
    let w = conjugacy_witness(6).unwrap();
    assert_eq!((w.sign, w.square, w.exponent), (-1, true, 5));
    let w = conjugacy_witness(4).unwrap();
    assert_eq!((w.sign, w.square, w.exponent), (-1, false, 3));
    assert_eq!(conjugacy_witness(1).unwrap().exponent, 0);
}

#[test]
fn translation_moves_enumerated_points() {
    let f = curve(&[((1, 0), int(1)), ((0, 1), int(1)), ((0, 0), int(-1))]);
    let (zx, zy) = (
        RootOfUnity::new(4, 1).unwrap(),
        RootOfUnity::new(3, 2).unwrap(),
    );
    let t = translate_curve(&f, zx, zy).unwrap();
    let EnumerationResult::Finite(base) = enumerate_torsion(&f).unwrap() else {
        panic!()
    };
    let mut moved: Vec<_> = base.iter().map(|p| p.translate(zx, zy)).collect();
    moved.sort();
    assert_eq!(
        enumerate_torsion(&t).unwrap(),
        EnumerationResult::Finite(moved)
    );
}
