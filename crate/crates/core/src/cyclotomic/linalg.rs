//! Fraction-free linear solving over the integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Solves the square system given as augmented rows `[A | b]`.
///
/// Returns `(y, det)` with `A · (y / det) = b`, or `None` when `A` is
/// singular. Uses Bareiss elimination, so every division is exact.
pub(crate) fn bareiss_solve(mut rows: Vec<Vec<BigInt>>) -> Option<(Vec<BigInt>, BigInt)> {
    let n = rows.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !rows[r][k].is_zero())?;
        if pivot != k {
            rows.swap(pivot, k);
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pr = &head[k];
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..=n {
                let v = &row[j] * &pr[k] - &factor * &pr[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    let det = prev;
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &rows[i][n];
        for j in i + 1..n {
            acc -= &rows[i][j] * &y[j];
        }
        y[i] = acc / &rows[i][i];
    }
    Some((y, det))
}
