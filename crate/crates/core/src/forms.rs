//! Indefinite binary quadratic forms: reduction, rho-cycles, narrow and
//! wide class numbers, genus rank, and prime splitting.
//!
//! All square-root comparisons against `sqrt(D)` are done by squaring and
//! sign analysis; no floating point enters any class-number computation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorize, is_prime, is_squarefree, isqrt_u64, kronecker};
use crate::unit::fundamental_unit;
pub use crate::unit::discriminant_of;
use crate::{Error, Result};

/// A binary quadratic form `A x^2 + B xy + C y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = QuadForm { a, b, c };
        let disc = f.discriminant();
        if disc <= 0 {
            return Err(Error::BadDiscriminant(a, b, c));
        }
        let r = isqrt_u64(disc as u64);
        if (r * r) as i128 == disc as i128 {
            return Err(Error::BadDiscriminant(a, b, c));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        i64::try_from(d).expect("discriminant fits i64 for desk-scale forms")
    }

    /// Value `A x^2 + B xy + C y^2` at an integer point.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        BigInt::from(self.a) * x * x + BigInt::from(self.b) * x * y + BigInt::from(self.c) * y * y
    }

    /// Content `gcd(A, B, C)`.
    pub fn content(&self) -> u64 {
        crate::arith::gcd(crate::arith::gcd(self.a, self.b) as i64, self.c)
    }
}

/// Reduced test: `0 < B < sqrt(D)` and `sqrt(D) - B < 2|A| < sqrt(D) + B`,
/// decided by integer squaring with sign case analysis.
pub fn is_reduced(f: &QuadForm) -> bool {
    let disc = f.b as i128 * f.b as i128 - 4 * f.a as i128 * f.c as i128;
    if disc <= 0 {
        return false;
    }
    let b = f.b as i128;
    if b <= 0 || b * b >= disc {
        return false;
    }
    let a2 = 2 * (f.a as i128).abs();
    // sqrt(D) - B < 2|A|  <=>  D < (2|A| + B)^2   (both sides positive)
    if disc >= (a2 + b) * (a2 + b) {
        return false;
    }
    // 2|A| < sqrt(D) + B  <=>  2|A| - B < sqrt(D); trivially true when
    // 2|A| <= B, else compare squares.
    if a2 > b && (a2 - b) * (a2 - b) >= disc {
        return false;
    }
    true
}

/// 2x2 integer matrix with determinant +-1, acting on forms on the right:
/// `(F . U)(v) = F(U v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Mat2 {
    pub m00: BigInt,
    pub m01: BigInt,
    pub m10: BigInt,
    pub m11: BigInt,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            m00: BigInt::one(),
            m01: BigInt::zero(),
            m10: BigInt::zero(),
            m11: BigInt::one(),
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            m00: &self.m00 * &o.m00 + &self.m01 * &o.m10,
            m01: &self.m00 * &o.m01 + &self.m01 * &o.m11,
            m10: &self.m10 * &o.m00 + &self.m11 * &o.m10,
            m11: &self.m10 * &o.m01 + &self.m11 * &o.m11,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    /// Inverse, valid for determinant +-1.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        debug_assert!(det.clone() * det.clone() == BigInt::one());
        Mat2 {
            m00: &self.m11 * &det,
            m01: -&self.m01 * &det,
            m10: -&self.m10 * &det,
            m11: &self.m00 * &det,
        }
    }

    /// Image of the first basis vector.
    pub fn col0(&self) -> (BigInt, BigInt) {
        (self.m00.clone(), self.m10.clone())
    }
}

/// One rho step valid on any form of positive non-square discriminant,
/// together with the transition matrix: `(A,B,C) -> (C, B', C')` where
/// `B' = -B (mod 2|C|)` is placed in the classical window.
pub(crate) fn rho_any_with_transform(f: &QuadForm) -> (QuadForm, Mat2) {
    let disc = f.discriminant();
    let s = isqrt_u64(disc as u64) as i64;
    let c = f.c;
    debug_assert!(c != 0);
    let c_abs2 = 2 * (c as i128).abs();
    let b = f.b as i128;
    let bp: i128 = if (c as i128).abs() > s as i128 {
        // |C| > sqrt(D): pick B' = -B (mod 2|C|) in (-|C|, |C|]
        let r = (-b).rem_euclid(c_abs2);
        if r <= c_abs2 / 2 {
            r
        } else {
            r - c_abs2
        }
    } else {
        // reduced window (sqrt(D) - 2|C|, sqrt(D)]
        s as i128 - (s as i128 + b).rem_euclid(c_abs2)
    };
    let cp = (bp * bp - disc as i128) / (4 * c as i128);
    let step = (b + bp) / (2 * c as i128);
    let next = QuadForm {
        a: c,
        b: i64::try_from(bp).expect("B' in range"),
        c: i64::try_from(cp).expect("C' in range"),
    };
    let t = Mat2 {
        m00: BigInt::zero(),
        m01: BigInt::from(-1),
        m10: BigInt::one(),
        m11: BigInt::from(step),
    };
    (next, t)
}

/// Rho step on a reduced form. Errors on non-reduced input; the output is
/// reduced again.
pub fn rho(f: &QuadForm) -> Result<QuadForm> {
    if !is_reduced(f) {
        return Err(Error::NotReduced(f.a, f.b, f.c));
    }
    let (next, _) = rho_any_with_transform(f);
    debug_assert!(is_reduced(&next), "rho must preserve reducedness");
    Ok(next)
}

/// Reduces an arbitrary form, returning the reduced form and the
/// accumulated transform `U` with `F . U = F_reduced`.
pub(crate) fn reduce_with_transform(f: QuadForm) -> Result<(QuadForm, Mat2)> {
    let mut cur = f;
    let mut acc = Mat2::identity();
    for _ in 0..20_000 {
        if is_reduced(&cur) {
            return Ok((cur, acc));
        }
        let (next, t) = rho_any_with_transform(&cur);
        acc = acc.mul(&t);
        cur = next;
    }
    Err(Error::Internal(format!(
        "form reduction failed to terminate from ({}, {}, {})",
        f.a, f.b, f.c
    )))
}

/// All reduced forms of positive non-square discriminant `disc`.
///
/// `B` runs over the discriminant parity below `sqrt(disc)`; for each `B`
/// the product `A * (-C) = (disc - B^2)/4` is split over all divisor
/// pairs with both sign assignments, then filtered by [`is_reduced`].
pub(crate) fn reduced_forms_of(disc: u64) -> Vec<QuadForm> {
    let s = isqrt_u64(disc);
    debug_assert!(s * s != disc);
    let mut out = Vec::new();
    let b0 = if disc.is_multiple_of(2) { 2 } else { 1 };
    let mut b = b0;
    while b <= s {
        let m = (disc - b * b) / 4;
        // divisors of m
        let mut divs = Vec::new();
        let mut i = 1u64;
        while i * i <= m {
            if m.is_multiple_of(i) {
                divs.push(i);
                if i != m / i {
                    divs.push(m / i);
                }
            }
            i += 1;
        }
        for a in divs {
            let c = (m / a) as i64;
            for (aa, cc) in [(a as i64, -c), (-(a as i64), c)] {
                let f = QuadForm { a: aa, b: b as i64, c: cc };
                if is_reduced(&f) {
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort_unstable_by_key(|f| (f.b, f.a, f.c));
    out
}

/// Partition of the reduced forms of `disc` into rho-cycles.
pub(crate) fn rho_cycles_of(disc: u64) -> Result<Vec<Vec<QuadForm>>> {
    let forms = reduced_forms_of(disc);
    let index: HashMap<QuadForm, usize> =
        forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut cycles = Vec::new();
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = forms[start];
        loop {
            let i = *index.get(&cur).ok_or_else(|| {
                Error::Internal(format!(
                    "rho left the reduced set at ({}, {}, {})",
                    cur.a, cur.b, cur.c
                ))
            })?;
            if seen[i] {
                break;
            }
            seen[i] = true;
            cycle.push(cur);
            cur = rho(&cur)?;
        }
        if cur != cycle[0] {
            return Err(Error::Internal(
                "rho orbit failed to close on its starting form".into(),
            ));
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// True iff `delta` is a fundamental discriminant (positive, non-square).
pub fn is_fundamental_discriminant(delta: u64) -> bool {
    if delta == 0 {
        return false;
    }
    let r = isqrt_u64(delta);
    if r * r == delta {
        return false;
    }
    match delta % 4 {
        1 => is_squarefree(delta).unwrap_or(false),
        0 => {
            let d = delta / 4;
            (d % 4 == 2 || d % 4 == 3) && is_squarefree(d).unwrap_or(false)
        }
        _ => false,
    }
}

/// Narrow class number: the count of rho-cycles of reduced forms of the
/// fundamental discriminant `delta`.
pub fn narrow_class_number(delta: u64) -> Result<u64> {
    if !is_fundamental_discriminant(delta) {
        return Err(Error::NotFundamental(delta));
    }
    Ok(rho_cycles_of(delta)?.len() as u64)
}

/// Genus rank `t - 1`, with `t` the number of distinct primes of `delta`.
pub fn genus_rank(delta: u64) -> Result<u32> {
    if !is_fundamental_discriminant(delta) {
        return Err(Error::NotFundamental(delta));
    }
    Ok(factorize(delta)?.distinct_primes() - 1)
}

/// Splitting behaviour of a rational prime in the field of radicand `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SplittingType::Split => "split",
            SplittingType::Inert => "inert",
            SplittingType::Ramified => "ramified",
        })
    }
}

/// Splitting of prime `q` in the field attached to squarefree `d`.
pub fn splitting_type(d: u64, q: u64) -> Result<SplittingType> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let delta = discriminant_of(d)?;
    if delta % q == 0 {
        return Ok(SplittingType::Ramified);
    }
    Ok(if kronecker(delta as i64, q as i64) == 1 {
        SplittingType::Split
    } else {
        SplittingType::Inert
    })
}

/// Narrow and wide class data of the field attached to squarefree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupSummary {
    pub d: u64,
    pub delta: u64,
    pub h_plus: u64,
    pub h: u64,
    /// Norm of the fundamental unit, `+1` or `-1`.
    pub unit_norm: i8,
    pub genus_rank: u32,
}

/// Wide class number `h`: equal to `h+` when the fundamental unit has
/// norm `-1`, and to `h+/2` otherwise.
pub fn wide_class_number(d: u64) -> Result<ClassGroupSummary> {
    let delta = discriminant_of(d)?;
    let h_plus = narrow_class_number(delta)?;
    let unit = fundamental_unit(d)?;
    let h = if unit.norm == -1 {
        h_plus
    } else {
        if h_plus % 2 != 0 {
            return Err(Error::Internal(format!(
                "norm +1 unit with odd narrow class number {h_plus} for d = {d}"
            )));
        }
        h_plus / 2
    };
    let genus_rank = genus_rank(delta)?;
    if genus_rank < 64 && h_plus % (1u64 << genus_rank) != 0 {
        return Err(Error::Internal(format!(
            "2^{genus_rank} does not divide narrow class number {h_plus} for d = {d}"
        )));
    }
    Ok(ClassGroupSummary {
        d,
        delta,
        h_plus,
        h,
        unit_norm: unit.norm,
        genus_rank,
    })
}
