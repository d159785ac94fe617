//! Exact scalars: rationals and elements of cyclotomic fields.
//!
//! Every character value and every matrix entry in the crate is a
//! [`CycNum`]. Elements carry the conductor of the field they are written
//! in; binary operations embed both operands into the field of the least
//! common multiple of the conductors.

mod cyclotomic;
mod interval;

pub use cyclotomic::{cyclotomic_poly, CycNum, MAX_CONDUCTOR};
pub use interval::{ln_enclosure, sqrt_enclosure, DyadicInterval};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("conductor {0} exceeds the supported maximum {MAX_CONDUCTOR}")]
    ConductorTooLarge(u64),
    #[error("element is not real (not fixed by complex conjugation)")]
    NotReal,
    #[error("element is not rational")]
    NotRational,
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}


