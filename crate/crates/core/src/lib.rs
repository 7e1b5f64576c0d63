//! Exact refined enumeration of alternating sign matrices.
//!
//! Refined counts are obtained three ways: by direct enumeration, through the
//! monotone-triangle recursion, and as binomial-basis coefficients of the
//! polynomial that counts monotone triangles with a prescribed bottom row.
//! The [`relations`] module checks linear relations between the families.

pub mod coeffs;
pub mod enumerate;
pub mod error;
pub mod exactmath;
pub mod relations;
pub mod report;
pub mod shiftops;

pub use enumerate::{CountTable, Family, RefinementSpec};
pub use error::{Error, Result};
pub use exactmath::{BigInt, BigRational, MultiPoly};
pub use report::{IdentityReport, Status};
pub use shiftops::{ShiftOp, SwapOp};
