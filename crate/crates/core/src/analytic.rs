//! Floating-point class-number cross-check via the character sum
//!
//! ```text
//! h = -1/(2 ln eps) * sum_{0 < a < D} chi_D(a) * ln sin(pi a / D)
//! ```
//!
//! with `chi_D = kronecker(D, .)`. This is a cross-check oracle only; the
//! cycle count of [`crate::forms::narrow_class_number`] stays
//! authoritative. The sum is evaluated in compensated `f64` arithmetic,
//! which certifies at most 52 bits; requests beyond that are rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::kronecker;
use crate::forms::is_fundamental_discriminant;
use crate::unit::{fundamental_unit, FundUnit};
use crate::{Error, Result};

/// `ln` of a positive big integer via its bit length and top mantissa
/// bits; exact to f64 rounding for any size.
fn ln_big(n: &BigInt) -> f64 {
    debug_assert!(n > &BigInt::zero());
    let bits = n.bits();
    if bits <= 52 {
        let (_, digits) = n.to_u64_digits();
        return (digits.first().copied().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 52;
    let top: BigInt = n >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of the fundamental unit from its integer data.
fn ln_unit(unit: &FundUnit) -> f64 {
    if unit.t.bits() <= 52 && unit.u.bits() <= 52 {
        let t: f64 = u64::try_from(&unit.t).unwrap() as f64;
        let u: f64 = u64::try_from(&unit.u).unwrap() as f64;
        return ((t + u * (unit.delta as f64).sqrt()) / 2.0).ln();
    }
    // eps = (t + sqrt(t^2 -+ 4))/2, so ln eps = ln t up to O(1/t^2),
    // far below f64 resolution once t exceeds 2^52.
    ln_big(&unit.t)
}

/// Analytic class number of fundamental discriminant `delta <= 10^4`,
/// evaluated at `precision_bits` of working precision (at most 52).
pub fn analytic_class_number(delta: u64, precision_bits: u32) -> Result<u64> {
    if precision_bits == 0 || precision_bits > 52 {
        return Err(Error::PrecisionUnsupported(precision_bits));
    }
    if delta > 10_000 {
        return Err(Error::Precondition(format!(
            "delta = {delta} exceeds the 10^4 analytic bound"
        )));
    }
    if !is_fundamental_discriminant(delta) {
        return Err(Error::NotFundamental(delta));
    }
    let d = if delta.is_multiple_of(4) { delta / 4 } else { delta };
    let unit = fundamental_unit(d)?;
    let reg = ln_unit(&unit);

    // Kahan-compensated character sum.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for a in 1..delta {
        let chi = kronecker(delta as i64, a as i64);
        if chi == 0 {
            continue;
        }
        let term = chi as f64 * (std::f64::consts::PI * a as f64 / delta as f64).sin().ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let estimate = -sum / (2.0 * reg);
    let rounded = estimate.round();
    if (estimate - rounded).abs() >= 0.49 || rounded < 1.0 {
        return Err(Error::PrecisionLoss { delta, estimate });
    }
    Ok(rounded as u64)
}
