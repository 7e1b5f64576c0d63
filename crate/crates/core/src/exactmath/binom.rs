//! Binomial coefficients as integers and as polynomials.
//!
//! `binom(x, m) = x (x-1) ... (x-m+1) / m!` for every integer `x`, so
//! negative upper arguments are allowed (`binom(-1, 2) = 1`). A negative lower
//! argument gives 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MultiPoly;

/// Integer binomial coefficient via the falling factorial.
pub fn binom(x: i64, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    // Fast path for the ordinary range; also avoids a long product when
    // 0 <= x < m.
    if x >= 0 && m > x {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..m {
        num *= BigInt::from(x - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// `m!`.
pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// The polynomial `binom(k_{var+1} + offset, degree)` in `nvars` variables.
pub fn binom_poly(nvars: usize, var: usize, offset: i64, degree: u32) -> MultiPoly {
    let mut p = MultiPoly::one(nvars);
    for j in 0..i64::from(degree) {
        let factor = MultiPoly::linear(nvars, var, offset - j);
        p = &p * &factor;
        p = p.scale(&BigRational::new(BigInt::one(), BigInt::from(j + 1)));
    }
    p
}

/// One element `binom(k_{var+1} + offset, degree)` of a binomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialBasisElement {
    pub var: usize,
    pub offset: i64,
    pub degree: u32,
}

impl BinomialBasisElement {
    pub fn new(var: usize, offset: i64, degree: u32) -> Self {
        BinomialBasisElement {
            var,
            offset,
            degree,
        }
    }

    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        binom_poly(nvars, self.var, self.offset, self.degree)
    }

    pub fn eval(&self, x: i64) -> BigInt {
        binom(x + self.offset, i64::from(self.degree))
    }
}

/// Expands `p` in variable `var` over the degree-graded basis
/// `binom(k_{var+1} + offset(m), m)`, `m = 0, 1, ...`.
///
/// Returns `c_0, ..., c_D` (`D` the degree of `p` in `var`), each a polynomial
/// in the remaining variables, with `p = sum_m c_m * binom(k + offset(m), m)`.
/// The zero polynomial expands to an empty list.
pub fn basis_expand(p: &MultiPoly, var: usize, offset: impl Fn(u32) -> i64) -> Vec<MultiPoly> {
    let nvars = p.nvars();
    let Some(top) = p.degree_in(var) else {
        return Vec::new();
    };
    let mut coeffs = vec![MultiPoly::zero(nvars); top as usize + 1];
    let mut rest = p.clone();
    for m in (0..=top).rev() {
        // binom(k + a, m) has leading coefficient 1/m! in k.
        let lead = rest.coefficient_in(var, m as u16);
        if lead.is_zero() {
            continue;
        }
        let c = lead.scale(&BigRational::from_integer(factorial(m)));
        let basis = binom_poly(nvars, var, offset(m), m);
        rest = &rest - &(&c * &basis);
        coeffs[m as usize] = c;
    }
    debug_assert!(rest.is_zero());
    coeffs
}

/// Re-sums an expansion produced by [`basis_expand`].
pub fn basis_resum(
    coeffs: &[MultiPoly],
    nvars: usize,
    var: usize,
    offset: impl Fn(u32) -> i64,
) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for (m, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = binom_poly(nvars, var, offset(m as u32), m as u32);
        out = &out + &(c * &basis);
    }
    out
}
