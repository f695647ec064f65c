//! Extended Richaud-Degert classification.
//!
//! A squarefree `d > 1` is of extended Richaud-Degert type when
//! `d = m^2 + r` with `r | 4m` and `-m < r <= m`, or `r = +-4m/3` (the
//! latter forces `3 | m`). Only `m = isqrt(d)` and `m = isqrt(d) + 1` can
//! carry such a decomposition, so the search is a two-candidate check,
//! ascending in `m`, trying the standard branch before the four-thirds
//! branch.

use crate::arith::{is_squarefree, isqrt_u64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdBranch {
    Standard,
    FourThirds,
}

impl std::fmt::Display for RdBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RdBranch::Standard => "standard",
            RdBranch::FourThirds => "four-thirds",
        })
    }
}

/// Outcome of [`classify_rd`]: either not of the type, or the first
/// decomposition `d = m^2 + r` by ascending `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RdClassification {
    pub is_rd: bool,
    pub m: u64,
    pub r: i64,
    pub branch: Option<RdBranch>,
}

impl RdClassification {
    fn not_rd() -> Self {
        RdClassification {
            is_rd: false,
            m: 0,
            r: 0,
            branch: None,
        }
    }
}

/// Classifies squarefree `d > 1` as extended Richaud-Degert or not.
pub fn classify_rd(d: u64) -> Result<RdClassification> {
    if d <= 1 {
        return Err(Error::Precondition(format!("d = {d} must exceed 1")));
    }
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d));
    }
    let m0 = isqrt_u64(d);
    for m in [m0, m0 + 1] {
        if m == 0 {
            continue;
        }
        let r = d as i64 - (m * m) as i64;
        if r == 0 {
            continue;
        }
        // standard branch: r | 4m and -m < r <= m
        if (4 * m as i64) % r == 0 && -(m as i64) < r && r <= m as i64 {
            return Ok(RdClassification {
                is_rd: true,
                m,
                r,
                branch: Some(RdBranch::Standard),
            });
        }
        // four-thirds branch: r = +-4m/3 with 3 | m
        if m % 3 == 0 && (r == (4 * m / 3) as i64 || r == -((4 * m / 3) as i64)) {
            return Ok(RdClassification {
                is_rd: true,
                m,
                r,
                branch: Some(RdBranch::FourThirds),
            });
        }
    }
    Ok(RdClassification::not_rd())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let c5 = classify_rd(5).unwrap();
        assert_eq!((c5.m, c5.r, c5.branch), (2, 1, Some(RdBranch::Standard)));
        let c69 = classify_rd(69).unwrap();
        assert_eq!((c69.m, c69.r, c69.branch), (9, -12, Some(RdBranch::FourThirds)));
        let c11 = classify_rd(11).unwrap();
        assert_eq!((c11.m, c11.r, c11.branch), (3, 2, Some(RdBranch::Standard)));
    }

    #[test]
    fn four_thirds_positive_branch() {
        // 93 = 81 + 12 with 12 = 4*9/3.
        let c = classify_rd(93).unwrap();
        assert_eq!((c.m, c.r, c.branch), (9, 12, Some(RdBranch::FourThirds)));
    }

    #[test]
    fn non_rd_field() {
        // 97: neither 97 - 81 = 16 (16 does not divide 36) nor
        // 97 - 100 = -3 (no divisibility, 3 does not divide 10) works.
        let c = classify_rd(97).unwrap();
        assert!(!c.is_rd);
    }

    #[test]
    fn class_number_one_fields_are_all_rd() {
        // Every field in the classical list of 43 class-number-one real
        // quadratic fields is of extended Richaud-Degert type.
        const FIELDS: [u64; 43] = [
            2, 3, 5, 6, 7, 11, 13, 14, 17, 21, 23, 29, 33, 37, 38, 47, 53, 62, 69, 77, 83, 93,
            101, 141, 167, 173, 197, 213, 227, 237, 293, 398, 413, 437, 453, 573, 677, 717, 1077,
            1133, 1253, 1293, 1757,
        ];
        for d in FIELDS {
            assert!(classify_rd(d).unwrap().is_rd, "d={d} failed to classify");
        }
    }

    #[test]
    fn decomposition_consistency() {
        for d in 2u64..5000 {
            if !is_squarefree(d).unwrap() {
                continue;
            }
            let c = classify_rd(d).unwrap();
            if c.is_rd {
                assert_eq!(c.m as i64 * c.m as i64 + c.r, d as i64, "d={d}");
                match c.branch.unwrap() {
                    RdBranch::Standard => {
                        assert_eq!((4 * c.m as i64) % c.r, 0);
                        assert!(-(c.m as i64) < c.r && c.r <= c.m as i64);
                    }
                    RdBranch::FourThirds => {
                        assert_eq!(c.m % 3, 0);
                        assert_eq!(c.r.unsigned_abs(), 4 * c.m / 3);
                    }
                }
            }
        }
    }
}
