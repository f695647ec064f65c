//! Exact integer primitives: square roots, factorization, gcd, Kronecker
//! symbol, deterministic primality.
//!
//! Everything here is pure and deterministic. Factorization is plain trial
//! division under a configurable budget; it is meant for desk-scale inputs,
//! not cryptographic ones.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::{Error, Result};

/// Default trial-division bound for [`factorize`].
pub const DEFAULT_FACTOR_BUDGET: u64 = 10_000_000;

/// A complete prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn reconstruct(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Number of distinct prime divisors.
    pub fn distinct_primes(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Floor square root of a `u64`.
#[inline]
pub fn isqrt_u64(n: u64) -> u64 {
    n.isqrt()
}

/// Floor square root of a `u128`.
#[inline]
pub fn isqrt_u128(n: u128) -> u128 {
    n.isqrt()
}

/// Floor square root of an arbitrary-precision integer.
///
/// Rejects negative input; `r` satisfies `r^2 <= n < (r+1)^2`.
pub fn isqrt_big(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput(i64::try_from(n).unwrap_or(i64::MIN)));
    }
    Ok(n.sqrt())
}

/// True iff `n` is a perfect square.
#[inline]
pub fn is_square_u64(n: u64) -> bool {
    // Squares mod 64 land on 12 residues; cheap reject before isqrt.
    const OK: u64 = {
        let mut mask = 0u64;
        let mut i = 0u64;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if OK & (1 << (n % 64)) == 0 {
        return false;
    }
    let r = n.isqrt();
    r * r == n
}

/// Perfect-square test returning the root.
#[inline]
pub fn square_root_exact_u128(n: u128) -> Option<u128> {
    const OK: u64 = {
        let mut mask = 0u64;
        let mut i = 0u64;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if OK & (1 << (n % 64) as u32) == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Perfect-square test for big integers, returning the root.
pub fn square_root_exact_big(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Greatest common divisor with `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular multiplication through `u128`.
#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is
/// deterministic below 3.3e24, far past the `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Complete factorization of `n >= 1` by trial division up to `budget`.
///
/// Composites whose second-smallest prime factor exceeds the budget are
/// rejected rather than silently misfactored; a primality check rescues
/// the common case of a single large prime cofactor.
pub fn factorize_with(n: u64, budget: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let value = n;
    let mut n = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0u32;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    // 6k +- 1 wheel.
    let mut p = 5u64;
    while p <= budget && (p as u128 * p as u128) <= n as u128 {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        if (n as u128) <= (budget as u128 * budget as u128) || is_prime(n) {
            factors.push((n, 1));
        } else {
            return Err(Error::FactorBudgetExceeded { n: value, budget });
        }
    }
    factors.sort_unstable();
    Ok(Factorization { value, factors })
}

/// [`factorize_with`] under the default budget.
pub fn factorize(n: u64) -> Result<Factorization> {
    factorize_with(n, DEFAULT_FACTOR_BUDGET)
}

/// True iff no prime square divides `n >= 1`.
pub fn is_squarefree(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n.is_multiple_of(4) || n.is_multiple_of(9) || n.is_multiple_of(25) {
        return Ok(false);
    }
    Ok(factorize(n)?.is_squarefree())
}

/// Kronecker symbol `(a/n)` with the standard conventions for `n = 0`,
/// `n = 2`, and negative `n`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    if n < 0 {
        if a < 0 {
            result = -result;
        }
        n = -n;
    }
    let mut a = a;
    // Split off the even part of n: (a/2) = 0, 1, -1 by a mod 8.
    let two = n.trailing_zeros();
    n >>= two;
    if two > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if (r == 3 || r == 5) && two % 2 == 1 {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd n > 0, via reciprocity.
    a = a.rem_euclid(n);
    let mut a = a as u64;
    let mut n = n as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Floor division, correct for negative operands.
#[inline]
pub fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}
