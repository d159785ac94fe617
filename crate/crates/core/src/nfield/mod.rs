//! Number fields of degree at most six: discriminants, maximal orders,
//! prime splitting and element arithmetic.

mod element;
mod factor;
mod field;
pub mod fp;
pub mod linalg;
mod order;
mod poly;

pub use element::{sextic_from_sqrt, sqrt_class_equal, FieldElement, SexticField};
pub use factor::{factor_monic, is_irreducible};
pub use field::{field_disc, FieldSummary, NumberField, MAX_FIELD_DEGREE};
pub use order::{dedekind_test, Certificate, DedekindResult};
pub use poly::{poly_disc, QPoly, ZPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NfError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial {0} is reducible over the rationals")]
    IrreducibilityFailure(String),
    #[error("degree {0} outside the supported range 1..=6")]
    DegreeOutOfRange(usize),
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("p = {0} divides the index [O_K : Z[theta]]; splitting cannot be read off f mod p")]
    IndexDivisor(u64),
    #[error("elements belong to different fields")]
    ParentMismatch,
    #[error("zero element")]
    ZeroElement,
    #[error("element is a square; the quadratic extension is trivial")]
    IsSquare,
    #[error("no squarefree norm polynomial found for the quadratic extension")]
    ReducibleResultant,
    #[error("prime factor of the discriminant exceeds 64 bits")]
    PrimeTooLarge,
}
