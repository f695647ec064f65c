//! Exact-arithmetic invariants of real quadratic fields.
//!
//! The crate computes, with integer arithmetic on every decision path:
//!
//! - periodic continued fractions of quadratic irrationals ([`cf`]),
//! - fundamental units of real quadratic orders ([`unit`]),
//! - a complete decision procedure for `x^2 - d*y^2 = N` ([`pell`]),
//! - narrow and wide class numbers via cycles of reduced indefinite
//!   binary quadratic forms, splitting types, and Richaud-Degert
//!   classification ([`forms`]),
//! - a descent laboratory that evaluates, instance by instance, whether
//!   `x^2 - d*y^2 = +-4p` is solvable for `d = a^2 m^2 + 4ap` and whether
//!   the class number exceeds one ([`theorem`]).
//!
//! The only floating-point computation in the crate is the analytic
//! class-number cross-check, which is explicitly a cross-check and never
//! feeds a decision.

pub mod analytic;
pub mod arith;
pub mod cf;
pub mod error;
pub mod forms;
pub mod pell;
pub mod rd;
pub mod theorem;
pub mod unit;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
