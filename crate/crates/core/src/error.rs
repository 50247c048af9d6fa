use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level must be positive")]
    ZeroLevel,
    #[error("level {level} exceeds the configured limit {limit}")]
    LevelTooLarge { level: u64, limit: u64 },
    #[error("exponent {exponent} is not invertible modulo {level}")]
    NotAUnit { level: u64, exponent: i64 },
    #[error("value at level {from} cannot be moved to level {to}")]
    LevelMismatch { from: u64, to: u64 },
    #[error("Möbius matrix has zero determinant")]
    SingularMatrix,
    #[error("curve has no terms")]
    EmptyCurve,
    #[error("difference lattice has rank {0}; use the binomial case")]
    DegenerateLattice(u8),
    #[error("level {0} is congruent to 2 mod 4, so it is not a minimal conductor")]
    NonMinimalLevel(u64),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("curve carries infinitely many torsion points")]
    InfiniteFamily,
    #[error("order must be positive")]
    ZeroOrder,
}
