//! Sparse multivariate polynomials over `BigRational`.
//!
//! Variables are indexed from 0; index `i` stands for `k_{i+1}`. Terms live in
//! a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so iteration and printing are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    fn with_exponent(&self, var: usize, e: u16) -> Self {
        let mut exps = self.0.clone();
        exps[var] = e;
        Monomial(exps)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in `nvars` variables with exact rational coefficients.
///
/// No stored term has a zero coefficient and every exponent vector has
/// length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Accumulates terms, dropping the ones that cancel.
struct TermAcc {
    terms: BTreeMap<Monomial, BigRational>,
}

impl TermAcc {
    fn new() -> Self {
        TermAcc {
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn finish(self, nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: self.terms,
        }
    }
}

fn int_binomials(e: u16) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..e {
        let next = &row[j as usize] * BigInt::from(e - j) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The polynomial `k_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(
            var < nvars,
            "variable {var} out of range for {nvars} variables"
        );
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), BigRational::one());
        MultiPoly { nvars, terms }
    }

    /// `k_{var+1} + offset`.
    pub fn linear(nvars: usize, var: usize, offset: i64) -> Self {
        &Self::var(nvars, var) + &Self::from_int(nvars, offset)
    }

    /// Builds a polynomial from explicit terms; zero coefficients are dropped
    /// and repeated monomials are summed.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, BigRational)>,
    ) -> Result<Self> {
        let mut acc = TermAcc::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableCount {
                    left: nvars,
                    right: exps.len(),
                });
            }
            acc.add(Monomial(exps), c);
        }
        Ok(acc.finish(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The constant polynomial's value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| u32::from(m.0[var])).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Coefficient of `k_{var+1}^deg`, as a polynomial in the other variables.
    pub fn coefficient_in(&self, var: usize, deg: u16) -> MultiPoly {
        let mut acc = TermAcc::new();
        for (m, c) in &self.terms {
            if m.0[var] == deg {
                acc.add(m.with_exponent(var, 0), c.clone());
            }
        }
        acc.finish(self.nvars)
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &BigRational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-BigRational::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut acc = TermAcc::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add(ma.mul(mb), ca * cb);
            }
        }
        Ok(acc.finish(self.nvars))
    }

    /// `self += factor * other`, in place.
    pub fn add_assign_scaled(&mut self, other: &MultiPoly, factor: &BigRational) {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            let delta = c * factor;
            match self.terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(delta);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigRational) -> MultiPoly {
        if factor.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, point: &[i64]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<BigInt>> = point
            .iter()
            .map(|&x| vec![BigInt::one(), BigInt::from(x)])
            .collect();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut prod = BigInt::one();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * BigInt::from(point[v]);
                    table.push(next);
                }
                prod *= &table[e as usize];
            }
            total += c * BigRational::from_integer(prod);
        }
        Ok(total)
    }

    /// Evaluates and requires an integral result.
    pub fn eval_integer(&self, point: &[i64]) -> Result<BigInt> {
        let v = self.eval(point)?;
        if !v.is_integer() {
            return Err(Error::Consistency(format!(
                "non-integral value {v} at {point:?}"
            )));
        }
        Ok(v.to_integer())
    }

    /// Substitutes integers for the variables marked `Some`; the variable
    /// count is unchanged and substituted variables no longer occur.
    pub fn eval_partial(&self, assignment: &[Option<i64>]) -> Result<MultiPoly> {
        if assignment.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: assignment.len(),
            });
        }
        let mut acc = TermAcc::new();
        for (m, c) in &self.terms {
            let mut factor = BigInt::one();
            let mut exps = m.0.clone();
            for (v, slot) in assignment.iter().enumerate() {
                if let Some(x) = slot {
                    factor *= num_traits::pow(BigInt::from(*x), exps[v] as usize);
                    exps[v] = 0;
                }
            }
            acc.add(Monomial(exps), c * BigRational::from_integer(factor));
        }
        Ok(acc.finish(self.nvars))
    }

    /// `p(..., k_{var+1} + z, ...)`.
    pub fn shift(&self, var: usize, z: i64) -> MultiPoly {
        if z == 0 {
            return self.clone();
        }
        let zb = BigInt::from(z);
        let mut acc = TermAcc::new();
        let mut binom_cache: Vec<Option<Vec<BigInt>>> = Vec::new();
        let mut zpow = vec![BigInt::one()];
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                acc.add(m.clone(), c.clone());
                continue;
            }
            if binom_cache.len() <= e as usize {
                binom_cache.resize(e as usize + 1, None);
            }
            let row = binom_cache[e as usize].get_or_insert_with(|| int_binomials(e));
            while zpow.len() <= e as usize {
                let next = zpow.last().unwrap() * &zb;
                zpow.push(next);
            }
            for j in 0..=e {
                let k = &row[j as usize] * &zpow[(e - j) as usize];
                acc.add(m.with_exponent(var, j), c * BigRational::from_integer(k));
            }
        }
        acc.finish(self.nvars)
    }

    /// Shifts every variable by the matching entry of `by`.
    pub fn shift_by(&self, by: &[i64]) -> Result<MultiPoly> {
        if by.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: by.len(),
            });
        }
        let mut out = self.clone();
        for (v, &z) in by.iter().enumerate() {
            if z != 0 {
                out = out.shift(v, z);
            }
        }
        Ok(out)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.0.clone();
                    exps.swap(a, b);
                    (Monomial(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Affine re-indexing: the result is
    /// `p(k_{src_0} + off_0, ..., k_{src_{n-1}} + off_{n-1})`, where argument
    /// `j` of `p` receives variable `args[j].0` of the result shifted by
    /// `args[j].1`.
    pub fn substitute_affine(&self, args: &[(usize, i64)]) -> Result<MultiPoly> {
        if args.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: args.len(),
            });
        }
        if let Some(&(src, _)) = args.iter().find(|(src, _)| *src >= self.nvars) {
            return Err(Error::Usage(format!("variable index {src} out of range")));
        }
        let mut is_perm = vec![false; self.nvars];
        for &(src, _) in args {
            is_perm[src] = true;
        }
        if is_perm.iter().all(|&b| b) {
            // Rename, then shift.
            let renamed = MultiPoly {
                nvars: self.nvars,
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut exps = vec![0u16; self.nvars];
                        for (j, &(src, _)) in args.iter().enumerate() {
                            exps[src] = m.0[j];
                        }
                        (Monomial(exps), c.clone())
                    })
                    .collect(),
            };
            let mut shifts = vec![0i64; self.nvars];
            for &(src, off) in args {
                shifts[src] = off;
            }
            return renamed.shift_by(&shifts);
        }
        let images: Vec<MultiPoly> = args
            .iter()
            .map(|&(src, off)| MultiPoly::linear(self.nvars, src, off))
            .collect();
        self.substitute(&images)
    }

    /// General composition `p(q_0, ..., q_{n-1})`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map_or(self.nvars, |q| q.nvars);
        for q in images {
            if q.nvars != target {
                return Err(Error::VariableCount {
                    left: target,
                    right: q.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|q| vec![MultiPoly::one(target), q.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = MultiPoly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().checked_mul(&images[v])?;
                    powers[v].push(next);
                }
                prod = prod.checked_mul(&powers[v][e as usize])?;
            }
            out.add_assign_scaled(&prod, &BigRational::one());
        }
        Ok(out)
    }

    /// Whether all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// Ring arithmetic with the variable-count check surfaced as an error.
pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

/// Exact evaluation by substitution.
pub fn poly_eval(p: &MultiPoly, point: &[i64]) -> Result<BigRational> {
    p.eval(point)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable-count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable-count mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable-count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            format!("k{}", v + 1)
                        } else {
                            format!("k{}^{}", v + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn additive_inverse_is_zero() {
        let k1 = MultiPoly::var(1, 0);
        let sum = poly_arith(&k1, &-&k1, ArithOp::Add).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let a = MultiPoly::linear(1, 0, 1);
        let b = MultiPoly::linear(1, 0, -1);
        let prod = poly_arith(&a, &b, ArithOp::Mul).unwrap();
        let expected = &(&MultiPoly::var(1, 0) * &MultiPoly::var(1, 0)) - &MultiPoly::one(1);
        assert_eq!(prod, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let p = &MultiPoly::var(2, 1) - &MultiPoly::var(2, 0);
        assert_eq!(poly_arith(&p, &MultiPoly::one(2), ArithOp::Mul).unwrap(), p);
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let err =
            poly_arith(&MultiPoly::var(1, 0), &MultiPoly::var(2, 0), ArithOp::Add).unwrap_err();
        assert_eq!(err, Error::VariableCount { left: 1, right: 2 });
        assert!(MultiPoly::one(2).eval(&[1]).is_err());
    }

    #[test]
    fn evaluation_by_substitution() {
        let p = &(&MultiPoly::var(2, 1) - &MultiPoly::var(2, 0)) + &MultiPoly::one(2);
        assert_eq!(poly_eval(&p, &[1, 3]).unwrap(), r(3));
        assert_eq!(poly_eval(&MultiPoly::zero(3), &[4, -2, 9]).unwrap(), r(0));
    }

    #[test]
    fn shift_matches_substitution() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&(&x * &x) * &y) + &(&y * &MultiPoly::from_int(2, 3));
        let shifted = p.shift(0, -2);
        for a in -3..3 {
            for b in -3..3 {
                assert_eq!(shifted.eval(&[a, b]).unwrap(), p.eval(&[a - 2, b]).unwrap());
            }
        }
    }

    #[test]
    fn affine_substitution_handles_permutations_and_repeats() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x * &y) + &(&x * &x);
        let q = p.substitute_affine(&[(1, 1), (0, -3)]).unwrap();
        let rep = p.substitute_affine(&[(0, 0), (0, 2)]).unwrap();
        for a in -2..3 {
            for b in -2..3 {
                assert_eq!(q.eval(&[a, b]).unwrap(), p.eval(&[b + 1, a - 3]).unwrap());
                assert_eq!(rep.eval(&[a, b]).unwrap(), p.eval(&[a, a + 2]).unwrap());
            }
        }
    }

    #[test]
    fn partial_evaluation() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x * &y) + &y;
        let q = p.eval_partial(&[Some(4), None]).unwrap();
        assert_eq!(q, &y * &MultiPoly::from_int(2, 5));
    }

    #[test]
    fn display_is_graded_descending() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&(&x * &x) - &y) + &MultiPoly::from_int(2, 2);
        assert_eq!(p.to_string(), "k1^2 - k2 + 2");
    }
}
