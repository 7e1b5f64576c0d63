//! Exact scalars, sparse multivariate polynomials and binomial polynomials.
//!
//! All arithmetic is over `BigRational`; nothing here ever rounds.

pub mod binom;
pub mod poly;

pub use binom::{basis_expand, basis_resum, binom, binom_poly, factorial, BinomialBasisElement};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{poly_arith, poly_eval, ArithOp, Monomial, MultiPoly};

/// Converts an integral rational, failing with a consistency error otherwise.
pub fn to_integer(v: &BigRational, context: &str) -> crate::Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(crate::Error::Consistency(format!(
            "{context}: non-integral value {v}"
        )))
    }
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}
