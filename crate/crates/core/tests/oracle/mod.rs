//! Independent reference computations used by the acceptance and invariant
//! tests. Nothing here calls into the library.

pub mod chars;
pub mod disc;
