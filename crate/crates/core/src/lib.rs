//! Exact enumeration of pairs of roots of unity on the graph curve of a
//! Möbius transformation with cyclotomic coefficients.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed
//! exactly over cyclotomic fields; floating point is used solely as a
//! prefilter whose rejections are covered by an explicit error bound.
//!
//! The pipeline is:
//!
//! 1. [`curves::MobiusMap`] → [`curves::graph_curve`] produces
//!    `f = (ax + b) − (cx + d)y` as a [`curves::TorusCurve`].
//! 2. [`polytope::difference_lattice`] separates binomial (rank ≤ 1) curves
//!    from the generic rank-2 case.
//! 3. [`curves::minimal_translate`] moves `f` to the translate with the
//!    smallest coefficient field `Q(ζ_N)`, and
//!    [`curves::conjugate_family`] builds the seven Galois/sign twists
//!    whose union contains every torsion point.
//! 4. [`torsion::intersect`] solves `f = f_i = 0` exactly, and
//!    [`torsion::enumerate_torsion`] assembles the complete list.
#![no_std]

extern crate alloc;

pub mod curves;
pub mod cyclotomic;
mod error;
pub mod fixtures;
pub mod poly;
pub mod polytope;
pub mod torsion;

pub use curves::{ConjugateFamily, FamilyCase, MinimalTranslate, MobiusMap, TorusCurve};
pub use cyclotomic::{CycloNum, GaloisMap, RootOfUnity};
pub use error::{Error, Result};
pub use polytope::{LatticeInfo, LatticePolytope};
pub use torsion::{BoundReport, DistributionTable, EnumerationResult, TorsionPoint};
