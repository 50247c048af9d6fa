//! Integer helpers and the memoized table of cyclotomic polynomials.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use spin::RwLock;

use crate::{Error, Result};

/// Default cap on the level of any intermediate cyclotomic field.
pub const DEFAULT_LEVEL_LIMIT: u64 = 10_080;

static LEVEL_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_LEVEL_LIMIT);

/// Current cap on cyclotomic levels.
pub fn level_limit() -> u64 {
    LEVEL_LIMIT.load(Ordering::Relaxed)
}

/// Changes the cap on cyclotomic levels, returning the previous value.
pub fn set_level_limit(limit: u64) -> u64 {
    LEVEL_LIMIT.swap(limit.max(1), Ordering::Relaxed)
}

pub(crate) fn check_level(level: u64) -> Result<u64> {
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let limit = level_limit();
    if level > limit {
        return Err(Error::LevelTooLarge { level, limit });
    }
    Ok(level)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn radical(n: u64) -> u64 {
    factorize(n).into_iter().map(|(p, _)| p).product()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let m_i = m as i128;
    let (mut old_r, mut r) = ((a as i128).rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m_i) as u64)
}

/// Smallest level whose cyclotomic field equals `Q(ζ_n)`: drops a factor 2
/// when `n ≡ 2 mod 4`.
pub fn canonical_level(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

type PolyTable = BTreeMap<u64, Arc<[i64]>>;

static CYCLOTOMIC: RwLock<PolyTable> = RwLock::new(BTreeMap::new());

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
///
/// Squarefree odd indices are computed by dividing `x^n − 1` by `Φ_d` for the
/// proper divisors `d`; the rest follow from `Φ_{2m}(x) = Φ_m(−x)` (m odd)
/// and `Φ_n(x) = Φ_{rad n}(x^{n / rad n})`. Results are memoized.
pub fn cyclotomic_poly(n: u64) -> Arc<[i64]> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLOTOMIC.read().get(&n) {
        return p.clone();
    }
    let poly: Arc<[i64]> = compute_cyclotomic(n).into();
    CYCLOTOMIC.write().entry(n).or_insert(poly).clone()
}

fn compute_cyclotomic(n: u64) -> Vec<i64> {
    match n {
        1 => return vec![-1, 1],
        2 => return vec![1, 1],
        _ => {}
    }
    let rad = radical(n);
    if rad != n {
        let base = cyclotomic_poly(rad);
        let step = (n / rad) as usize;
        let mut out = vec![0i64; (base.len() - 1) * step + 1];
        for (i, &c) in base.iter().enumerate() {
            out[i * step] = c;
        }
        return out;
    }
    if n.is_multiple_of(2) {
        // n = 2m with m > 1 odd, so φ(m) is even.
        let base = cyclotomic_poly(n / 2);
        return base
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect();
    }
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut rem: Vec<i64> = vec![0; n as usize + 1];
    rem[0] = -1;
    rem[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        rem = exact_div_monic(&rem, &cyclotomic_poly(d));
    }
    rem
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut r = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] = r[i + j]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}
