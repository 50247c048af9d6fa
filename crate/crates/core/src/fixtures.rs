//! The two maximal 14-point examples: their matrices, torsion points and
//! the distribution of those points over the conjugate family.
//!
//! Points are stored as exponent pairs `(j, k)` meaning `(ζ_n^j, ζ_n^k)` at
//! the example's level `n`.

use crate::curves::MobiusMap;
use crate::cyclotomic::{CycloNum, RootOfUnity};

/// Level of the first example.
pub const S1_LEVEL: u64 = 30;
/// Level of the second example.
pub const S2_LEVEL: u64 = 60;

pub const S1_POINTS: &[(i64, i64)] = &[
    (0, 0),
    (1, 2),
    (2, 5),
    (3, 9),
    (4, 13),
    (5, 16),
    (6, 18),
    (9, 21),
    (11, 22),
    (14, 23),
    (18, 24),
    (22, 25),
    (25, 26),
    (27, 27),
];

pub const S2_POINTS: &[(i64, i64)] = &[
    (0, 0),
    (1, 9),
    (2, 18),
    (4, 28),
    (6, 32),
    (8, 34),
    (12, 36),
    (22, 38),
    (31, 39),
    (40, 40),
    (50, 42),
    (54, 44),
    (56, 46),
    (58, 50),
];

/// One row of a distribution table: member index (1 to 7), torsion points
/// on it and the number of further torus intersections.
pub type DistributionRow = (usize, &'static [(i64, i64)], usize);

pub const S1_DISTRIBUTION: &[DistributionRow] = &[
    (1, &[], 0),
    (2, &[], 0),
    (3, &[(3, 9), (18, 24)], 0),
    (4, &[(0, 0), (3, 9), (6, 18), (18, 24)], 0),
    (5, &[(2, 5), (4, 13), (14, 23), (22, 25)], 0),
    (6, &[(1, 2), (5, 16), (11, 22), (25, 26)], 0),
    (7, &[(3, 9), (9, 21), (18, 24), (27, 27)], 0),
];

pub const S2_DISTRIBUTION: &[DistributionRow] = &[
    (1, &[], 0),
    (2, &[], 0),
    (3, &[(1, 9), (31, 39)], 0),
    (4, &[(0, 0), (40, 40), (12, 36), (4, 28)], 0),
    (5, &[(8, 34), (56, 46)], 2),
    (6, &[(6, 32), (54, 44)], 2),
    (7, &[(22, 38), (50, 42), (2, 18), (58, 50)], 0),
];

/// Minimal conductors of the coefficient fields after translation.
pub const S1_CONDUCTOR: u64 = 5;
pub const S2_CONDUCTOR: u64 = 15;

/// Level-30 entries of the first matrix as `(exponent, coefficient)` lists.
pub const GAMMA1_ENTRIES: [&[(i64, i64)]; 4] = [
    &[(7, -1), (6, -1), (2, 1)],
    &[(7, 1), (2, -1)],
    &[(0, 1)],
    &[(6, -1), (0, -1)],
];

/// Level-60 entries of the second matrix.
pub const GAMMA2_ENTRIES: [&[(i64, i64)]; 4] = [
    &[(14, -1), (12, -1), (10, -1), (4, 1), (2, 1), (0, 1)],
    &[(14, 1), (12, 1), (10, 1), (6, -1), (4, -1), (2, -1)],
    &[(12, 1), (10, 1), (8, 1), (2, -1)],
    &[(12, -1), (10, -1), (8, -1), (6, -1), (2, 1), (0, 1)],
];

/// The first matrix re-expressed over `Q(ξ)`, `ξ = ζ₅³`, as obtained by
/// conductor reduction of the level-30 entries.
pub const GAMMA1_XI_DERIVED: [&[(i64, i64)]; 4] = [
    &[(3, 1), (1, 1), (0, 1)],
    &[(3, -1), (2, -1), (1, -1), (0, -1)],
    &[(0, 1)],
    &[(2, -1), (0, -1)],
];

/// The frequently quoted `Q(ξ)` form of the first matrix. It is not equal
/// to the level-30 matrix: its graph curve misses the point `(1, 1)`.
pub const GAMMA1_XI_QUOTED: [&[(i64, i64)]; 4] = [
    &[(3, -1), (2, -1), (1, 1), (0, 1)],
    &[(3, 1), (2, -1), (1, -1), (0, -1)],
    &[(0, 1)],
    &[(2, -1), (0, -1)],
];

/// Notes on known misprints surrounding the examples.
pub const NOTES: &[&str] = &[
    "the level-30 matrix is authoritative; over Q(xi), xi = z5^3, it reads \
     a = xi^3+xi+1, b = -xi^3-xi^2-xi-1, c = 1, d = -xi^2-1",
    "the quoted Q(xi) form a = -xi^3-xi^2+xi+1, b = xi^3-xi^2-xi-1 gives f(1,1) = -xi^2 != 0",
    "in Q(z30), z^9 = z^7 + z^6 - z^3 - z^2 + 1 (the opposite sign is sometimes quoted)",
    "the level-60 matrix is defined over Q(z15); eta^2 = -omega cannot hold for eta in Q(z15)",
];

/// Sum of `coef·ζ^exp` at `level`.
pub fn sparse(level: u64, terms: &[(i64, i64)]) -> CycloNum {
    let mut acc = CycloNum::zero().lift(level).expect("fixture level");
    for &(e, c) in terms {
        let t = CycloNum::zeta_pow(level, e).expect("fixture level");
        acc = acc + t * CycloNum::from_integer(c);
    }
    acc
}

/// `Σ coef·ξ^exp` with `ξ = ζ₅³`.
pub fn sparse_xi(terms: &[(i64, i64)]) -> CycloNum {
    let shifted: alloc::vec::Vec<(i64, i64)> = terms.iter().map(|&(e, c)| (3 * e, c)).collect();
    sparse(5, &shifted)
}

fn matrix(entries: [CycloNum; 4]) -> MobiusMap {
    let [a, b, c, d] = entries;
    MobiusMap::new(a, b, c, d).expect("fixture matrices are invertible")
}

pub fn gamma1() -> MobiusMap {
    matrix(GAMMA1_ENTRIES.map(|e| sparse(S1_LEVEL, e)))
}

pub fn gamma2() -> MobiusMap {
    matrix(GAMMA2_ENTRIES.map(|e| sparse(S2_LEVEL, e)))
}

pub fn gamma1_xi_derived() -> [CycloNum; 4] {
    GAMMA1_XI_DERIVED.map(sparse_xi)
}

pub fn gamma1_xi_quoted() -> [CycloNum; 4] {
    GAMMA1_XI_QUOTED.map(sparse_xi)
}

/// Converts stored exponent pairs at `level` into root-of-unity pairs.
pub fn points(level: u64, list: &[(i64, i64)]) -> alloc::vec::Vec<(RootOfUnity, RootOfUnity)> {
    list.iter()
        .map(|&(j, k)| {
            (
                RootOfUnity::new(level, j).expect("fixture level"),
                RootOfUnity::new(level, k).expect("fixture level"),
            )
        })
        .collect()
}
