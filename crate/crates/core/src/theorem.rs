//! Descent laboratory for the family `d = a^2 m^2 + 4ap`.
//!
//! For parameters `(a, m, p)` with `p` an odd prime the module builds the
//! quadratic integers
//!
//! ```text
//! alpha = (x - y sqrt(d))/2        (from a witness of x^2 - d y^2 = +-4p)
//! beta  = (a m^2 + 2p + m sqrt(d))/2,   N(beta) = p^2
//! ```
//!
//! forms the composite `alpha * beta / p` and its conjugate variant,
//! records whether the two components are rational integers, replays the
//! two minimality cases, the gcd/genus branch, and the
//! splitting-and-principality argument, and condenses everything into a
//! per-instance verdict: does the expected "no solution, class number
//! greater than one" outcome actually hold for this instance?
//!
//! The verdict is purely computational. The module never assumes the
//! expected outcome; it reports what the integers say.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd, is_prime, is_squarefree};
use crate::forms::{genus_rank, splitting_type, wide_class_number, ClassGroupSummary, SplittingType};
use crate::pell::{is_representable_with, NormFormBudget, PellWitness, Representability};
use crate::unit::discriminant_of;
use crate::{Error, Result};

/// Parameters `(a, m, p)` generating `d = a^2 m^2 + 4ap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub a: u64,
    pub m: u64,
    pub p: u64,
}

impl FamilyParams {
    pub fn new(a: u64, m: u64, p: u64) -> Self {
        FamilyParams { a, m, p }
    }

    /// `d = a^2 m^2 + 4 a p`, recomputed on access.
    pub fn d(&self) -> u64 {
        self.a * self.a * self.m * self.m + 4 * self.a * self.p
    }

    /// The structural requirements every lab operation needs: `p` an odd
    /// prime and `d` squarefree. Squarefree `d` forces `a`, `m` odd and
    /// `d = 1 (mod 4)`.
    pub fn well_formed(&self) -> std::result::Result<(), String> {
        if self.p <= 2 || !is_prime(self.p) {
            return Err(format!("p = {} is not an odd prime", self.p));
        }
        if self.m == 0 {
            return Err("m must be at least 1".into());
        }
        let d = self.d();
        match is_squarefree(d) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("d = {d} is not squarefree")),
            Err(e) => Err(format!("squarefree check failed for d = {d}: {e}")),
        }
    }

    /// The full hypothesis: well-formed plus `a > 1`.
    pub fn hypothesis(&self) -> std::result::Result<(), String> {
        if self.a <= 1 {
            return Err(format!("a = {} must exceed 1", self.a));
        }
        self.well_formed()
    }
}

/// A quadratic integer `(s + t sqrt(d))/2` of the field with radicand `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub s: BigInt,
    pub t: BigInt,
    pub d: u64,
}

impl QuadInt {
    /// Builds `(s + t sqrt(d))/2`, rejecting pairs whose norm is not a
    /// rational integer.
    pub fn new(s: BigInt, t: BigInt, d: u64) -> Result<Self> {
        let num = &s * &s - BigInt::from(d) * &t * &t;
        if (&num % BigInt::from(4)).is_zero() {
            Ok(QuadInt { s, t, d })
        } else {
            Err(Error::ParityViolation {
                s: s.to_string(),
                t: t.to_string(),
                d,
            })
        }
    }

    /// Exact norm `(s^2 - d t^2)/4`.
    pub fn norm(&self) -> BigInt {
        (&self.s * &self.s - BigInt::from(self.d) * &self.t * &self.t) / 4
    }

    /// Exact product within the same field.
    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, other.d);
        let d = BigInt::from(self.d);
        let s = (&self.s * &other.s + &d * &self.t * &other.t) / 2;
        let t = (&self.s * &other.t + &self.t * &other.s) / 2;
        debug_assert!(
            ((&self.s * &other.s + &d * &self.t * &other.t) % BigInt::from(2)).is_zero(),
            "product left the ring of integers"
        );
        QuadInt { s, t, d: self.d }
    }

    pub fn conjugate(&self) -> QuadInt {
        QuadInt {
            s: self.s.clone(),
            t: -&self.t,
            d: self.d,
        }
    }
}

/// `alpha = (x - y sqrt(d))/2`.
pub fn make_alpha(x: &BigInt, y: &BigInt, d: u64) -> Result<QuadInt> {
    QuadInt::new(x.clone(), -y, d)
}

/// `beta = (a m^2 + 2p + m sqrt(d))/2`; its norm is exactly `p^2`.
pub fn make_beta(params: &FamilyParams) -> Result<QuadInt> {
    params.well_formed().map_err(Error::HypothesisFailed)?;
    let s = BigInt::from(params.a * params.m * params.m + 2 * params.p);
    let beta = QuadInt::new(s, BigInt::from(params.m), params.d())?;
    debug_assert_eq!(beta.norm(), BigInt::from(params.p * params.p));
    Ok(beta)
}

/// The two components of the composite before and after division by `2p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentOutcome {
    pub x_num: BigInt,
    pub y_num: BigInt,
    pub x: Option<BigInt>,
    pub y: Option<BigInt>,
    pub integral: bool,
    pub norm_preserved: Option<bool>,
    pub used_conjugate: bool,
}

fn require_pm4p(params: &FamilyParams, x: &BigInt, y: &BigInt) -> Result<BigInt> {
    let d = params.d();
    let val = x * x - BigInt::from(d) * y * y;
    let four_p = BigInt::from(4 * params.p);
    if val == four_p || val == -&four_p {
        Ok(val)
    } else {
        Err(Error::Precondition(format!(
            "({x}, {y}) does not solve x^2 - {d} y^2 = +-{four_p}"
        )))
    }
}

/// Composite components `X_num = (a m^2 + 2p) x -+ m d y` and
/// `Y_num = m x -+ (a m^2 + 2p) y` (upper signs for `beta`, lower for the
/// conjugate), divided by `2p` when both are divisible.
pub fn compose_eq22(
    params: &FamilyParams,
    x: &BigInt,
    y: &BigInt,
    use_conjugate: bool,
) -> Result<DescentOutcome> {
    let input_norm = require_pm4p(params, x, y)?;
    let d = BigInt::from(params.d());
    let w = BigInt::from(params.a * params.m * params.m + 2 * params.p);
    let m = BigInt::from(params.m);
    let (x_num, y_num) = if use_conjugate {
        (&w * x + &m * &d * y, &m * x + &w * y)
    } else {
        (&w * x - &m * &d * y, &m * x - &w * y)
    };
    let two_p = BigInt::from(2 * params.p);
    let integral = (&x_num % &two_p).is_zero() && (&y_num % &two_p).is_zero();
    let (xq, yq, norm_preserved) = if integral {
        let xq = &x_num / &two_p;
        let yq = &y_num / &two_p;
        let out_norm = &xq * &xq - &d * &yq * &yq;
        (Some(xq), Some(yq), Some(out_norm == input_norm))
    } else {
        (None, None, None)
    };
    Ok(DescentOutcome {
        x_num,
        y_num,
        x: xq,
        y: yq,
        integral,
        norm_preserved,
        used_conjugate: use_conjugate,
    })
}

/// Divisibility of both composites by `2p`, recorded without assuming
/// either outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegralityRecord {
    pub beta_integral: bool,
    pub conj_integral: bool,
}

pub fn integrality_claim(params: &FamilyParams, x: &BigInt, y: &BigInt) -> Result<IntegralityRecord> {
    let beta = compose_eq22(params, x, y, false)?;
    let conj = compose_eq22(params, x, y, true)?;
    Ok(IntegralityRecord {
        beta_integral: beta.integral,
        conj_integral: conj.integral,
    })
}

/// Outcome of replaying the two minimality cases on a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseOutcome {
    Case1Contradiction,
    Case2Contradiction,
    BoundaryA1Y1,
    PremiseFails,
}

impl std::fmt::Display for CaseOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseOutcome::Case1Contradiction => "case1-contradiction",
            CaseOutcome::Case2Contradiction => "case2-contradiction",
            CaseOutcome::BoundaryA1Y1 => "boundary-a1y1",
            CaseOutcome::PremiseFails => "premise-fails",
        })
    }
}

/// Final inequality of the first minimality case: `m^2 >= (a m^2 + 4p) y^2`.
pub fn case1_chain_holds(params: &FamilyParams, y: &BigInt) -> bool {
    let m2 = BigInt::from(params.m * params.m);
    let coeff = BigInt::from(params.a * params.m * params.m + 4 * params.p);
    m2 >= coeff * y * y
}

/// Final inequality of the second minimality case: `1 >= a y^2`.
pub fn case2_chain_holds(params: &FamilyParams, y: &BigInt) -> bool {
    BigInt::one() >= BigInt::from(params.a) * y * y
}

/// Replays the minimality analysis on a `+-4p` witness with `y >= 1`.
///
/// The minimality inequality is `y <= |m x - (a m^2 + 2p) y| / (2p)`.
/// When it holds with the component positive, the chain of case one ends
/// in `m^2 >= (a m^2 + 4p) y^2`, impossible; with the component negative,
/// the chain of case two ends in `1 >= a y^2`, which forces `a = 1` and
/// `y = 1`. When the inequality itself fails the minimality premise is
/// unusable for this witness (for instance a non-integral component).
pub fn case_analysis(params: &FamilyParams, x: &BigInt, y: &BigInt) -> Result<CaseOutcome> {
    require_pm4p(params, x, y)?;
    if y < &BigInt::one() {
        return Err(Error::Precondition("case analysis needs y >= 1".into()));
    }
    let w = BigInt::from(params.a * params.m * params.m + 2 * params.p);
    let y_num = BigInt::from(params.m) * x - &w * y;
    let two_p_y = BigInt::from(2 * params.p) * y;
    if two_p_y > y_num.abs() {
        return Ok(CaseOutcome::PremiseFails);
    }
    if y_num.is_positive() {
        if case1_chain_holds(params, y) {
            return Err(Error::Internal(format!(
                "case-1 chain m^2 >= (a m^2 + 4p) y^2 held for {params:?}, y = {y}"
            )));
        }
        Ok(CaseOutcome::Case1Contradiction)
    } else if case2_chain_holds(params, y) {
        debug_assert!(params.a == 1 && y == &BigInt::one());
        Ok(CaseOutcome::BoundaryA1Y1)
    } else {
        Ok(CaseOutcome::Case2Contradiction)
    }
}

/// The gcd(m, p) > 1 branch: `p | d` and the genus rank is at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdBranchReport {
    pub applicable: bool,
    pub p_divides_d: bool,
    pub genus_rank: u32,
}

pub fn check_gcd_branch(params: &FamilyParams) -> Result<GcdBranchReport> {
    params.well_formed().map_err(Error::HypothesisFailed)?;
    let d = params.d();
    let applicable = gcd(params.m as i64, params.p as i64) > 1;
    let p_divides_d = d.is_multiple_of(params.p);
    if applicable && !p_divides_d {
        return Err(Error::Internal(format!(
            "gcd(m, p) > 1 but p does not divide d for {params:?}"
        )));
    }
    let rank = genus_rank(discriminant_of(d)?)?;
    if applicable && rank < 1 {
        return Err(Error::Internal(format!(
            "gcd branch promises genus rank >= 1, got {rank} for {params:?}"
        )));
    }
    Ok(GcdBranchReport {
        applicable,
        p_divides_d,
        genus_rank: rank,
    })
}

/// Outcome of the splitting-and-principality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrincipalIdealOutcome {
    /// `p` does not split, the argument does not start.
    NotSplit,
    /// A norm `+-p` generator exists; the prime above `p` is principal.
    PrincipalWitness(PellWitness),
    /// `p` splits and no `+-4p` representation exists, forcing `h > 1`.
    NonPrincipalHenceHGt1,
}

pub fn principal_ideal_test(d: u64, p: u64) -> Result<PrincipalIdealOutcome> {
    principal_ideal_test_with(d, p, &NormFormBudget::default())
}

pub fn principal_ideal_test_with(
    d: u64,
    p: u64,
    budget: &NormFormBudget,
) -> Result<PrincipalIdealOutcome> {
    if splitting_type(d, p)? != SplittingType::Split {
        return Ok(PrincipalIdealOutcome::NotSplit);
    }
    let rep = is_representable_with(d, p, budget)?;
    Ok(match rep.plus.or(rep.minus) {
        Some(w) => PrincipalIdealOutcome::PrincipalWitness(w),
        None => PrincipalIdealOutcome::NonPrincipalHenceHGt1,
    })
}

/// Per-instance verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HypothesisNotMet,
    ClaimHolds,
    ClaimViolated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::ClaimHolds => "claim-holds",
            Verdict::ClaimViolated => "claim-violated",
        })
    }
}

/// Everything [`verify_theorem`] establishes about one instance.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub params: FamilyParams,
    pub d: u64,
    pub hypothesis_ok: bool,
    pub hypothesis_reason: Option<String>,
    pub representation: Option<Representability>,
    pub summary: Option<ClassGroupSummary>,
    pub splitting: Option<SplittingType>,
    pub gcd_mp: u64,
    pub verdict: Verdict,
}

/// Checks hypotheses, decides representability of `+-4p`, computes class
/// data and splitting, and emits the verdict:
///
/// * `claim-holds` iff the hypotheses hold, neither sign is representable,
///   and `h > 1`;
/// * `claim-violated` iff the hypotheses hold and either sign is
///   representable or `h = 1`.
pub fn verify_theorem(params: &FamilyParams) -> Result<TheoremReport> {
    verify_theorem_with(params, &NormFormBudget::default())
}

pub fn verify_theorem_with(params: &FamilyParams, budget: &NormFormBudget) -> Result<TheoremReport> {
    let d = params.d();
    if let Err(reason) = params.hypothesis() {
        return Ok(TheoremReport {
            params: *params,
            d,
            hypothesis_ok: false,
            hypothesis_reason: Some(reason),
            representation: None,
            summary: None,
            splitting: None,
            gcd_mp: gcd(params.m as i64, params.p as i64),
            verdict: Verdict::HypothesisNotMet,
        });
    }
    let representation = is_representable_with(d, params.p, budget)?;
    let summary = wide_class_number(d)?;
    let splitting = splitting_type(d, params.p)?;
    check_gcd_branch(params)?;
    let has_rep = representation.any().is_some();
    // Cross-consistency: a split prime with no representation forces a
    // nontrivial class group; anything else is a solver defect.
    if splitting == SplittingType::Split && !has_rep && summary.h == 1 {
        return Err(Error::Internal(format!(
            "p = {} splits in d = {d} with h = 1 but no representation was found",
            params.p
        )));
    }
    let verdict = if !has_rep && summary.h > 1 {
        Verdict::ClaimHolds
    } else {
        Verdict::ClaimViolated
    };
    Ok(TheoremReport {
        params: *params,
        d,
        hypothesis_ok: true,
        hypothesis_reason: None,
        representation: Some(representation),
        summary: Some(summary),
        splitting: Some(splitting),
        gcd_mp: gcd(params.m as i64, params.p as i64),
        verdict,
    })
}

/// All `(a, m, p)` with odd `a` in `[3, max_a]`, odd `m` in `[1, max_m]`,
/// odd prime `p <= max_p`, and `d` squarefree, ascending. Even `a` or `m`
/// force `4 | d` and are provably never squarefree, so only odd values
/// are walked.
pub fn gen_paper_family(max_a: u64, max_m: u64, max_p: u64) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    let mut a = 3;
    while a <= max_a {
        let mut m = 1;
        while m <= max_m {
            for p in (3..=max_p).filter(|&p| p % 2 == 1 && is_prime(p)) {
                let params = FamilyParams::new(a, m, p);
                if is_squarefree(params.d()).unwrap_or(false) {
                    out.push(params);
                }
            }
            m += 2;
        }
        a += 2;
    }
    out
}

/// A member of the family `d = a^2 m^2 + 4a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlMember {
    pub a: u64,
    pub m: u64,
    pub d: u64,
}

/// All odd `a >= 1`, odd `m >= 1` with `d = a^2 m^2 + 4a <= max_d`
/// squarefree.
pub fn gen_bl_family(max_d: u64) -> Vec<BlMember> {
    let mut out = Vec::new();
    let mut a = 1u64;
    while a * a + 4 * a <= max_d {
        let mut m = 1u64;
        loop {
            let d = a * a * m * m + 4 * a;
            if d > max_d {
                break;
            }
            if is_squarefree(d).unwrap_or(false) {
                out.push(BlMember { a, m, d });
            }
            m += 2;
        }
        a += 2;
    }
    out
}

/// A member of the family `d = m^2 + 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YokoiMember {
    pub m: u64,
    pub d: u64,
}

/// All odd `m <= max_m` with `m^2 + 4` squarefree.
pub fn gen_yokoi(max_m: u64) -> Vec<YokoiMember> {
    let mut out = Vec::new();
    let mut m = 1u64;
    while m <= max_m {
        let d = m * m + 4;
        if is_squarefree(d).unwrap_or(false) {
            out.push(YokoiMember { m, d });
        }
        m += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::kronecker;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(make_alpha(&big(7), &big(1), 69).unwrap().norm(), big(-5));
        assert_eq!(make_alpha(&big(1), &big(1), 13).unwrap().norm(), big(-3));
        assert_eq!(make_alpha(&big(3), &big(1), 5).unwrap().norm(), big(1));
        assert!(make_alpha(&big(2), &big(1), 13).is_err());
    }

    #[test]
    fn beta_examples() {
        let b = make_beta(&FamilyParams::new(3, 1, 5)).unwrap();
        assert_eq!((b.s, b.t.clone(), b.d), (big(13), big(1), 69));
        assert_eq!(make_beta(&FamilyParams::new(3, 1, 5)).unwrap().norm(), big(25));
        let b13 = make_beta(&FamilyParams::new(1, 1, 3)).unwrap();
        assert_eq!((b13.s, b13.d), (big(7), 13));
        assert_eq!(make_beta(&FamilyParams::new(1, 1, 3)).unwrap().norm(), big(9));
        // d = 45 is not squarefree.
        assert!(make_beta(&FamilyParams::new(3, 1, 3)).is_err());
        let b85 = make_beta(&FamilyParams::new(5, 1, 3)).unwrap();
        assert_eq!((b85.s, b85.d), (big(11), 85));
        assert_eq!(make_beta(&FamilyParams::new(5, 1, 3)).unwrap().norm(), big(9));
    }

    #[test]
    fn beta_norm_identity_direct() {
        // (a m^2 + 2p)^2 - d m^2 = 4 p^2 regardless of squarefreeness;
        // check through QuadInt on hypothesis-passing params.
        for (a, m, p) in [(3u64, 1u64, 5u64), (5, 1, 3), (3, 5, 7), (7, 3, 11)] {
            let params = FamilyParams::new(a, m, p);
            if params.hypothesis().is_ok() {
                let beta = make_beta(&params).unwrap();
                assert_eq!(beta.norm(), BigInt::from(p * p));
            }
        }
    }

    #[test]
    fn compose_examples() {
        let p113 = FamilyParams::new(1, 1, 3);
        let out = compose_eq22(&p113, &big(1), &big(1), false).unwrap();
        assert!(out.integral);
        assert_eq!((out.x.unwrap(), out.y.unwrap()), (big(-1), big(-1)));
        assert_eq!(out.norm_preserved, Some(true));

        let p315 = FamilyParams::new(3, 1, 5);
        let beta = compose_eq22(&p315, &big(7), &big(1), false).unwrap();
        assert_eq!((beta.x_num.clone(), beta.y_num.clone()), (big(22), big(-6)));
        assert!(!beta.integral);

        let conj = compose_eq22(&p315, &big(7), &big(1), true).unwrap();
        assert!(conj.integral);
        assert_eq!((conj.x.unwrap(), conj.y.unwrap()), (big(16), big(2)));
        assert_eq!(conj.norm_preserved, Some(true));

        assert!(compose_eq22(&p315, &big(2), &big(1), false).is_err());
    }

    #[test]
    fn integrality_examples() {
        let r = integrality_claim(&FamilyParams::new(1, 1, 3), &big(1), &big(1)).unwrap();
        assert!(r.beta_integral);

        let r = integrality_claim(&FamilyParams::new(3, 1, 5), &big(7), &big(1)).unwrap();
        assert!(!r.beta_integral && r.conj_integral);

        let r = integrality_claim(&FamilyParams::new(3, 1, 5), &big(16), &big(2)).unwrap();
        assert!(r.beta_integral);
        let out = compose_eq22(&FamilyParams::new(3, 1, 5), &big(16), &big(2), false).unwrap();
        assert_eq!((out.x.unwrap(), out.y.unwrap()), (big(7), big(-1)));
    }

    #[test]
    fn case_examples() {
        assert_eq!(
            case_analysis(&FamilyParams::new(1, 1, 3), &big(1), &big(1)).unwrap(),
            CaseOutcome::BoundaryA1Y1
        );
        assert_eq!(
            case_analysis(&FamilyParams::new(3, 1, 5), &big(7), &big(1)).unwrap(),
            CaseOutcome::PremiseFails
        );
        // Hypothetical case-1 arithmetic for (a=5, m=1, p=3), y=1:
        // 1 >= 17 is false.
        assert!(!case1_chain_holds(&FamilyParams::new(5, 1, 3), &big(1)));
    }

    #[test]
    fn gcd_branch_examples() {
        let r = check_gcd_branch(&FamilyParams::new(3, 5, 5)).unwrap();
        assert!(r.applicable && r.p_divides_d);
        assert_eq!(r.genus_rank, 2);

        let r = check_gcd_branch(&FamilyParams::new(3, 1, 5)).unwrap();
        assert!(!r.applicable);

        // d = 117 is not squarefree: hypothesis failure surfaces upstream.
        assert!(matches!(
            check_gcd_branch(&FamilyParams::new(3, 3, 3)),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn principal_ideal_examples() {
        match principal_ideal_test(69, 5).unwrap() {
            PrincipalIdealOutcome::PrincipalWitness(w) => {
                assert_eq!((w.x, w.y), (big(7), big(1)));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        assert_eq!(
            principal_ideal_test(85, 3).unwrap(),
            PrincipalIdealOutcome::NonPrincipalHenceHGt1
        );
        assert_eq!(principal_ideal_test(69, 3).unwrap(), PrincipalIdealOutcome::NotSplit);
    }

    #[test]
    fn verify_examples() {
        let r = verify_theorem(&FamilyParams::new(5, 1, 3)).unwrap();
        assert_eq!(r.verdict, Verdict::ClaimHolds);
        assert_eq!(r.summary.as_ref().unwrap().h, 2);

        let r = verify_theorem(&FamilyParams::new(3, 1, 5)).unwrap();
        assert_eq!(r.verdict, Verdict::ClaimViolated);
        let w = r.representation.as_ref().unwrap().minus.as_ref().unwrap();
        assert_eq!((w.x.clone(), w.y.clone()), (big(7), big(1)));
        assert_eq!(r.summary.as_ref().unwrap().h, 1);

        let r = verify_theorem(&FamilyParams::new(3, 1, 3)).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
        assert!(!r.hypothesis_ok);
    }

    #[test]
    fn generator_examples() {
        let fam = gen_paper_family(3, 1, 5);
        assert_eq!(fam, vec![FamilyParams::new(3, 1, 5)]);
        assert_eq!(fam[0].d(), 69);
        assert!(gen_paper_family(1, 15, 47).is_empty());

        let bl = gen_bl_family(1300);
        assert!(bl.contains(&BlMember { a: 1, m: 1, d: 5 }));
        assert!(bl.contains(&BlMember { a: 3, m: 1, d: 21 }));
        assert!(bl.contains(&BlMember { a: 7, m: 5, d: 1253 }));
        assert!(gen_bl_family(4).is_empty());

        let yk: Vec<u64> = gen_yokoi(7).iter().map(|y| y.d).collect();
        assert_eq!(yk, vec![5, 13, 29, 53]);
        assert!(gen_yokoi(0).is_empty());
    }

    #[test]
    fn family_congruences() {
        for params in gen_paper_family(9, 9, 13) {
            let d = params.d();
            assert_eq!(d % 4, 1, "{params:?}");
            assert_eq!(params.a % 2, 1);
            assert_eq!(params.m % 2, 1);
            // d = a^2 m^2 (mod 4p)
            let am2 = (params.a * params.a * params.m * params.m) % (4 * params.p);
            assert_eq!(d % (4 * params.p), am2, "{params:?}");
            // gcd(am, p) = 1 forces p split
            if gcd((params.a * params.m) as i64, params.p as i64) == 1 {
                assert_eq!(kronecker(d as i64, params.p as i64), 1, "{params:?}");
                assert_eq!(
                    splitting_type(d, params.p).unwrap(),
                    SplittingType::Split,
                    "{params:?}"
                );
            }
        }
    }

    #[test]
    fn norm_multiplicativity_and_descent_identity() {
        for params in gen_paper_family(7, 7, 13) {
            let d = params.d();
            let rep = crate::pell::is_representable(d, params.p).unwrap();
            for w in [rep.plus.as_ref(), rep.minus.as_ref()].into_iter().flatten() {
                let alpha = make_alpha(&w.x, &w.y, d).unwrap();
                let beta = make_beta(&params).unwrap();
                let prod = alpha.mul(&beta);
                assert_eq!(prod.norm(), alpha.norm() * beta.norm(), "{params:?}");

                // Integral composites preserve the input norm.
                for conj in [false, true] {
                    let out = compose_eq22(&params, &w.x, &w.y, conj).unwrap();
                    if out.integral {
                        assert_eq!(out.norm_preserved, Some(true), "{params:?}");
                    }
                }

                // 2p | Y-component iff fully integral; and with exactly one
                // side integral, p divides exactly one of x -+ a m y.
                let rec = integrality_claim(&params, &w.x, &w.y).unwrap();
                if gcd(params.m as i64, params.p as i64) == 1 {
                    let wcoef = BigInt::from(params.a * params.m * params.m + 2 * params.p);
                    let y_num = BigInt::from(params.m) * &w.x - &wcoef * &w.y;
                    let two_p = BigInt::from(2 * params.p);
                    assert_eq!(rec.beta_integral, (&y_num % &two_p).is_zero(), "{params:?}");
                }
                if rec.beta_integral != rec.conj_integral {
                    let amy = BigInt::from(params.a * params.m) * &w.y;
                    let p = BigInt::from(params.p);
                    let div_minus = ((&w.x - &amy) % &p).is_zero();
                    let div_plus = ((&w.x + &amy) % &p).is_zero();
                    assert!(div_minus != div_plus, "{params:?}");
                }
            }
        }
    }
}
