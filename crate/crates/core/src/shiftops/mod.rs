//! Shift-operator algebra acting on [`MultiPoly`].
//!
//! A [`ShiftOp`] is a finite sum `sum_a c_a E_1^{a_1} ... E_n^{a_n}` with
//! integer (possibly negative) exponents. `E_i` replaces `k_i` by `k_i + 1`,
//! `Delta_i = E_i - id` and `delta_i = id - E_i^{-1}`. All such operators
//! commute, so composition is plain multiplication of the formal sums.

pub mod alpha;
pub mod lemmas;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::MultiPoly;

pub use alpha::{
    alpha_expanded_operator, alpha_m_poly, alpha_operator, alpha_poly, alpha_shift_sum,
    vandermonde_quotient, SYMBOLIC_HARD_MAX, SYMBOLIC_MAX,
};
pub use lemmas::{
    check_cycle_identity, check_ep_annihilation, check_lemma_j23, check_lemma_step3,
    check_summation_lemma, check_swap_identity,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOp {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

/// Which operator family an elementary symmetric combination is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpBase {
    /// Shift operators `E_i`.
    Shift,
    /// Forward differences `Delta_i = E_i - id`.
    Forward,
    /// Backward differences `delta_i = id - E_i^{-1}`.
    Backward,
}

impl ShiftOp {
    pub fn zero(nvars: usize) -> Self {
        ShiftOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], BigRational::one())
    }

    fn monomial(nvars: usize, shift: Vec<i64>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(shift, c);
        }
        ShiftOp { nvars, terms }
    }

    /// `E_{var}^z`.
    pub fn shift(nvars: usize, var: usize, z: i64) -> Self {
        assert!(var < nvars);
        let mut a = vec![0; nvars];
        a[var] = z;
        Self::monomial(nvars, a, BigRational::one())
    }

    /// `Delta_{var} = E_{var} - id`.
    pub fn forward(nvars: usize, var: usize) -> Self {
        &Self::shift(nvars, var, 1) - &Self::identity(nvars)
    }

    /// `delta_{var} = id - E_{var}^{-1}`.
    pub fn backward(nvars: usize, var: usize) -> Self {
        &Self::identity(nvars) - &Self::shift(nvars, var, -1)
    }

    pub fn base(nvars: usize, var: usize, base: OpBase) -> Self {
        match base {
            OpBase::Shift => Self::shift(nvars, var, 1),
            OpBase::Forward => Self::forward(nvars, var),
            OpBase::Backward => Self::backward(nvars, var),
        }
    }

    /// `V_{x,y} = E_x + Delta_x Delta_y`.
    pub fn v_op(nvars: usize, x: usize, y: usize) -> Self {
        &Self::shift(nvars, x, 1) + &Self::forward(nvars, x).compose(&Self::forward(nvars, y))
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    fn accumulate(terms: &mut BTreeMap<Vec<i64>, BigRational>, a: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(a) {
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

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ShiftOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    fn combine(&self, other: &ShiftOp, sign: &BigRational) -> ShiftOp {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            Self::accumulate(&mut terms, a.clone(), c * sign);
        }
        ShiftOp {
            nvars: self.nvars,
            terms,
        }
    }

    /// Operator product; equals the composition of actions.
    pub fn compose(&self, other: &ShiftOp) -> ShiftOp {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Self::accumulate(&mut terms, sum, ca * cb);
            }
        }
        ShiftOp {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> ShiftOp {
        let mut out = Self::identity(self.nvars);
        for _ in 0..e {
            out = out.compose(self);
        }
        out
    }

    /// Exact linear action on a polynomial.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableCount {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (a, c) in &self.terms {
            let shifted = p.shift_by(a)?;
            out.add_assign_scaled(&shifted, c);
        }
        Ok(out)
    }
}

impl std::ops::Add for &ShiftOp {
    type Output = ShiftOp;
    fn add(self, rhs: &ShiftOp) -> ShiftOp {
        self.combine(rhs, &BigRational::one())
    }
}

impl std::ops::Sub for &ShiftOp {
    type Output = ShiftOp;
    fn sub(self, rhs: &ShiftOp) -> ShiftOp {
        self.combine(rhs, &-BigRational::one())
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let shifts: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &z)| z != 0)
                    .map(|(v, &z)| {
                        if z == 1 {
                            format!("E{}", v + 1)
                        } else {
                            format!("E{}^{}", v + 1, z)
                        }
                    })
                    .collect();
                let body = if shifts.is_empty() {
                    "id".to_string()
                } else {
                    shifts.join("*")
                };
                format!("({c})*{body}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The operator exchanging two variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapOp {
    pub a: usize,
    pub b: usize,
}

impl SwapOp {
    pub fn new(a: usize, b: usize) -> Self {
        SwapOp { a, b }
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if self.a >= p.nvars() || self.b >= p.nvars() {
            return Err(Error::Usage(format!(
                "swap ({}, {}) out of range for {} variables",
                self.a,
                self.b,
                p.nvars()
            )));
        }
        Ok(p.swap_vars(self.a, self.b))
    }
}

/// `e_p` of the chosen base operators over `vars`; `e_0 = id`, and the zero
/// operator when `p > vars.len()`.
pub fn elem_sym_op(nvars: usize, p: usize, vars: &[usize], base: OpBase) -> ShiftOp {
    // e[j] after processing a prefix of vars
    let mut e = vec![ShiftOp::zero(nvars); p + 1];
    e[0] = ShiftOp::identity(nvars);
    for &v in vars {
        let x = ShiftOp::base(nvars, v, base);
        for j in (1..=p).rev() {
            if e[j - 1].is_zero() {
                continue;
            }
            let add = x.compose(&e[j - 1]);
            e[j] = &e[j] + &add;
        }
    }
    e.swap_remove(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{binom_poly, rat};

    #[test]
    fn shift_acts_by_substitution() {
        let k1 = MultiPoly::var(1, 0);
        let out = ShiftOp::shift(1, 0, 1).apply(&k1).unwrap();
        assert_eq!(out, MultiPoly::linear(1, 0, 1));
    }

    #[test]
    fn forward_difference_lowers_binomial_degree() {
        let b3 = binom_poly(1, 0, 0, 3);
        let out = ShiftOp::forward(1, 0).apply(&b3).unwrap();
        assert_eq!(out, binom_poly(1, 0, 0, 2));
    }

    #[test]
    fn backward_difference_decrements_top_basis_index() {
        // delta binom(k - n + j, j - 1) = binom(k - n + j - 1, j - 2)
        let n = 5;
        for j in 2..=6i64 {
            let b = binom_poly(1, 0, j - n, (j - 1) as u32);
            let out = ShiftOp::backward(1, 0).apply(&b).unwrap();
            assert_eq!(out, binom_poly(1, 0, j - n - 1, (j - 2) as u32));
        }
    }

    #[test]
    fn elementary_symmetric_operators() {
        assert_eq!(
            elem_sym_op(2, 0, &[0, 1], OpBase::Shift),
            ShiftOp::identity(2)
        );
        assert_eq!(
            elem_sym_op(2, 1, &[0, 1], OpBase::Shift),
            &ShiftOp::shift(2, 0, 1) + &ShiftOp::shift(2, 1, 1)
        );
        assert!(elem_sym_op(2, 3, &[0, 1], OpBase::Shift).is_zero());
        let e2 = elem_sym_op(3, 2, &[0, 1, 2], OpBase::Shift);
        assert_eq!(e2.len(), 3);
    }

    #[test]
    fn forward_and_backward_commute() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&(&x * &x) * &y) + &(&y * &MultiPoly::from_int(2, 7));
        let d = ShiftOp::forward(2, 0);
        let b = ShiftOp::backward(2, 0);
        let lhs = d.apply(&b.apply(&p).unwrap()).unwrap();
        let rhs = b.apply(&d.apply(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(d.compose(&b).apply(&p).unwrap(), lhs);
    }

    #[test]
    fn swap_is_an_involution() {
        let p = &MultiPoly::var(3, 0) - &(&MultiPoly::var(3, 2) * &MultiPoly::var(3, 2));
        let s = SwapOp::new(0, 2);
        let once = s.apply(&p).unwrap();
        assert_ne!(once, p);
        assert_eq!(s.apply(&once).unwrap(), p);
        assert!(SwapOp::new(0, 3).apply(&p).is_err());
    }

    #[test]
    fn apply_rejects_mismatched_polynomials() {
        assert!(ShiftOp::identity(2).apply(&MultiPoly::one(3)).is_err());
    }

    #[test]
    fn scale_and_pow() {
        let d = ShiftOp::forward(1, 0);
        let p = binom_poly(1, 0, 0, 4);
        assert_eq!(d.pow(4).apply(&p).unwrap(), MultiPoly::one(1));
        assert!(d.scale(&rat(0)).is_zero());
    }
}
