//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.

mod arith;
mod galois;
mod linalg;
mod num;
mod root;

pub(crate) use arith::check_level;
pub use arith::{
    canonical_level, cyclotomic_poly, divisors, factorize, gcd, lcm, level_limit, mod_inverse,
    set_level_limit, totient, DEFAULT_LEVEL_LIMIT,
};
pub use galois::GaloisMap;
pub(crate) use num::unit_angle;
pub use num::CycloNum;
pub use root::RootOfUnity;

use crate::Result;

/// Arithmetic operation selector for [`cyc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field operation at the common level `lcm(level x, level y)`.
pub fn cyc_arith(op: ArithOp, x: &CycloNum, y: &CycloNum) -> Result<CycloNum> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

pub fn galois_apply(s: GaloisMap, x: &CycloNum) -> Result<CycloNum> {
    s.apply(x)
}

pub fn as_root_of_unity(x: &CycloNum) -> Option<RootOfUnity> {
    x.as_root_of_unity()
}

pub fn conductor_reduce(x: &CycloNum) -> CycloNum {
    x.conductor_reduce()
}
