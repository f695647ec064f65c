//! Periodic continued fractions of quadratic irrationals.
//!
//! A surd `(P + sqrt(D))/Q` is expanded with the classical state
//! recurrence
//!
//! ```text
//! a_i = floor((P_i + sqrt(D)) / Q_i)
//! P_{i+1} = a_i Q_i - P_i
//! Q_{i+1} = (D - P_{i+1}^2) / Q_i
//! ```
//!
//! where the floor is computed with integer arithmetic only. Each state
//! satisfies `Q_i | D - P_i^2`, so the division above is exact. The
//! expansion of any quadratic irrational is eventually periodic; the
//! period is detected by the first repetition of a `(P, Q)` state.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::arith::{floor_div, isqrt_u64};
use crate::{Error, Result};

/// A quadratic irrational `(P + sqrt(D))/Q` with `D` positive non-square
/// and `Q | D - P^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: i64,
    q: i64,
    d: i64,
}

impl QuadSurd {
    /// Builds a normalized surd.
    ///
    /// If `Q` does not divide `D - P^2` the representation is rescaled to
    /// `(P|Q| + sqrt(D Q^2)) / Q|Q|`, which leaves the value unchanged and
    /// restores the divisibility invariant.
    pub fn new(p: i64, q: i64, d: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        if d <= 0 {
            return Err(Error::NegativeInput(d));
        }
        let root = isqrt_u64(d as u64) as i64;
        if root * root == d {
            return Err(Error::PerfectSquare(d as u64));
        }
        let (p, q, d) = if (d as i128 - (p as i128) * (p as i128)) % q as i128 == 0 {
            (p, q, d)
        } else {
            let scale = q.unsigned_abs() as i128;
            let p2 = p as i128 * scale;
            let q2 = q as i128 * scale;
            let d2 = d as i128 * scale * scale;
            (
                i64::try_from(p2).map_err(|_| Error::Overflow)?,
                i64::try_from(q2).map_err(|_| Error::Overflow)?,
                i64::try_from(d2).map_err(|_| Error::Overflow)?,
            )
        };
        Ok(QuadSurd { p, q, d })
    }

    /// `sqrt(d)` as a surd.
    pub fn sqrt(d: i64) -> Result<Self> {
        QuadSurd::new(0, 1, d)
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn d(&self) -> i64 {
        self.d
    }
}

/// One `(P, Q)` state of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CfState {
    pub p: i64,
    pub q: i64,
}

/// A fully expanded continued fraction: integer part, preperiodic
/// quotients, one minimal period, and the `(P, Q)` state trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub a0: i64,
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
    /// `trace[i]` is the state from which quotient `a_i` was emitted;
    /// one extra state is kept past the period so that
    /// `trace[period_start() + period.len()] == trace[period_start()]`.
    pub trace: Vec<CfState>,
}

impl CfExpansion {
    /// Index into `trace` of the state opening the period.
    ///
    /// Zero for purely periodic expansions, in which case `a0` itself is
    /// `period[0]`.
    pub fn period_start(&self) -> usize {
        if self.preperiod.is_empty() && self.trace[0] == self.trace[self.period.len()] {
            0
        } else {
            1 + self.preperiod.len()
        }
    }

    /// Quotient `a_i` of the infinite expansion.
    pub fn quotient(&self, i: usize) -> i64 {
        if i == 0 {
            return self.a0;
        }
        let start = self.period_start();
        if start == 0 {
            // purely periodic: stream is period repeated from index 0
            return self.period[i % self.period.len()];
        }
        if i <= self.preperiod.len() {
            self.preperiod[i - 1]
        } else {
            self.period[(i - 1 - self.preperiod.len()) % self.period.len()]
        }
    }
}

/// Floor of `(P + sqrt(D))/Q` using integers only.
///
/// Relies on `sqrt(D)` being irrational: `P + sqrt(D)` lies strictly
/// between `P + s` and `P + s + 1` for `s = isqrt(D)`, and no integer
/// multiple of `Q` can fall inside that open unit interval.
fn floor_surd(p: i64, q: i64, s: i64) -> i64 {
    if q > 0 {
        floor_div(p + s, q)
    } else {
        floor_div(p + s + 1, q)
    }
}

/// Expands a surd into its preperiod and one minimal period.
pub fn cf_expand(surd: &QuadSurd) -> CfExpansion {
    let d = surd.d;
    let s = isqrt_u64(d as u64) as i64;
    let mut p = surd.p;
    let mut q = surd.q;
    let mut quotients: Vec<i64> = Vec::new();
    let mut trace: Vec<CfState> = Vec::new();
    let mut seen: HashMap<CfState, usize> = HashMap::new();
    loop {
        let state = CfState { p, q };
        if let Some(&j) = seen.get(&state) {
            trace.push(state);
            let a0 = quotients[0];
            let preperiod = if j > 1 { quotients[1..j].to_vec() } else { Vec::new() };
            let period = quotients[j..].to_vec();
            debug_assert!(!period.is_empty());
            return CfExpansion {
                a0,
                preperiod,
                period,
                trace,
            };
        }
        seen.insert(state, trace.len());
        trace.push(state);
        let a = floor_surd(p, q, s);
        quotients.push(a);
        p = a * q - p;
        debug_assert_eq!((d - p * p) % q, 0, "state invariant broke");
        q = (d - p * p) / q;
        debug_assert!(q != 0);
    }
}

/// First `k + 1` convergents `h_i / k_i` of an expansion.
pub fn convergents(cf: &CfExpansion, k: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(k + 1);
    let (mut h2, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k2, mut k1) = (BigInt::from(1), BigInt::from(0));
    for i in 0..=k {
        let a = BigInt::from(cf.quotient(i));
        let h = &a * &h1 + &h2;
        let den = &a * &k1 + &k2;
        out.push((h.clone(), den.clone()));
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, den);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn expand(p: i64, q: i64, d: i64) -> CfExpansion {
        cf_expand(&QuadSurd::new(p, q, d).unwrap())
    }

    #[test]
    fn rejects_bad_surds() {
        assert!(matches!(QuadSurd::new(0, 0, 2), Err(Error::ZeroDenominator)));
        assert!(matches!(QuadSurd::new(0, 1, 4), Err(Error::PerfectSquare(4))));
        assert!(matches!(QuadSurd::new(0, 1, -2), Err(Error::NegativeInput(-2))));
    }

    #[test]
    fn normalization_rescales() {
        // (7 + sqrt(2))/3: 3 does not divide 2 - 49, so the surd is scaled.
        let s = QuadSurd::new(7, 3, 2).unwrap();
        assert_eq!((s.p(), s.q(), s.d()), (21, 9, 18));
        assert_eq!((s.d() as i128 - (s.p() as i128).pow(2)).rem_euclid(s.q() as i128), 0);
    }

    #[test]
    fn sqrt2() {
        let cf = expand(0, 1, 2);
        assert_eq!(cf.a0, 1);
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![2]);
    }

    #[test]
    fn golden_ratio_is_purely_periodic() {
        let cf = expand(1, 2, 5);
        assert_eq!(cf.a0, 1);
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![1]);
        assert_eq!(cf.period_start(), 0);
    }

    #[test]
    fn sqrt69() {
        let cf = expand(0, 1, 69);
        assert_eq!(cf.a0, 8);
        assert!(cf.preperiod.is_empty());
        assert_eq!(cf.period, vec![3, 3, 1, 4, 1, 3, 3, 16]);
    }

    #[test]
    fn nonempty_preperiod() {
        // (21 + sqrt(18))/9 = (7 + sqrt(2))/3 has one preperiodic quotient.
        let cf = expand(7, 3, 2);
        assert_eq!(cf.a0, 2);
        assert_eq!(cf.preperiod, vec![1]);
        assert_eq!(cf.period, vec![4, 8]);
    }

    #[test]
    fn negative_value_surd() {
        // -sqrt(2) = (0 + sqrt(2))/(-1): a0 must be -2.
        let cf = expand(0, -1, 2);
        assert_eq!(cf.a0, -2);
        for (i, _) in cf.period.iter().enumerate() {
            assert!(cf.quotient(i + 1 + cf.preperiod.len()) >= 1);
        }
    }

    #[test]
    fn period_closure_state_matches() {
        for d in [2i64, 3, 5, 7, 13, 61, 69, 94, 991] {
            let cf = expand(0, 1, d);
            let start = cf.period_start();
            assert_eq!(
                cf.trace[start],
                cf.trace[start + cf.period.len()],
                "period closure failed for sqrt({d})"
            );
        }
    }

    #[test]
    fn state_invariant_along_trace() {
        for (p, q, d) in [(3, 2, 8), (0, 1, 2), (0, 1, 139), (5, -3, 19), (1, 2, 1021)] {
            let surd = QuadSurd::new(p, q, d).unwrap();
            let cf = cf_expand(&surd);
            for st in &cf.trace {
                let rem = (surd.d() as i128 - st.p as i128 * st.p as i128) % st.q as i128;
                assert_eq!(rem, 0, "Q | D - P^2 failed at {st:?} for {:?}", (p, q, d));
            }
        }
    }

    #[test]
    fn convergents_examples() {
        let one = BigInt::one();
        let cf = expand(0, 1, 2);
        assert_eq!(convergents(&cf, 0), vec![(one.clone(), one.clone())]);
        assert_eq!(
            convergents(&cf, 2),
            vec![
                (BigInt::from(1), BigInt::from(1)),
                (BigInt::from(3), BigInt::from(2)),
                (BigInt::from(7), BigInt::from(5)),
            ]
        );
        let golden = expand(1, 2, 5);
        assert_eq!(
            convergents(&golden, 2),
            vec![
                (BigInt::from(1), BigInt::from(1)),
                (BigInt::from(2), BigInt::from(1)),
                (BigInt::from(3), BigInt::from(2)),
            ]
        );
    }

    #[test]
    fn convergent_determinant_identity() {
        // h_i k_{i-1} - h_{i-1} k_i = (-1)^{i-1}
        for (p, q, d) in [(0, 1, 2), (0, 1, 69), (1, 2, 5), (7, 3, 2), (0, 1, 1021), (5, -3, 19)] {
            let cf = expand(p, q, d);
            let cs = convergents(&cf, 12);
            for i in 1..cs.len() {
                let det = &cs[i].0 * &cs[i - 1].1 - &cs[i - 1].0 * &cs[i].1;
                let expected = if (i - 1) % 2 == 0 { 1 } else { -1 };
                assert_eq!(det, BigInt::from(expected), "i={i} d={d}");
            }
        }
    }

    #[test]
    fn quotients_positive_after_a0() {
        for (p, q, d) in [(0, 1, 2), (0, -1, 2), (5, -3, 19), (11, 7, 3), (-9, 4, 91)] {
            let cf = expand(p, q, d);
            for i in 1..=(cf.preperiod.len() + 2 * cf.period.len()) {
                assert!(cf.quotient(i) >= 1, "quotient {i} of {:?} not positive", (p, q, d));
            }
        }
    }
}
