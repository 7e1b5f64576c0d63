//! Operator-level identities satisfied by `alpha`, checked exactly.
//!
//! Public checks take 1-based variable positions so reports read in the usual
//! `k_1, ..., k_n` numbering. Identities in extra integer parameters are
//! certified on grids larger than the relevant degree bound in each free
//! variable; the grid is recorded in the report.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::alpha::{alpha_m_poly, alpha_operator, alpha_poly, SYMBOLIC_MAX};
use super::{elem_sym_op, OpBase, ShiftOp};
use crate::enumerate::interleavings;
use crate::error::{usage, Result};
use crate::exactmath::{binom, MultiPoly};
use crate::report::IdentityReport;

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || n > SYMBOLIC_MAX {
        return usage(format!(
            "{what} needs {min} <= n <= {SYMBOLIC_MAX}, got {n}"
        ));
    }
    Ok(())
}

/// Cartesian product of inclusive integer ranges, first coordinate slowest.
fn grid(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        let mut next = Vec::new();
        for p in &out {
            for x in lo..=hi {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn describe_grid(names: &[String], ranges: &[(i64, i64)]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(ranges)
        .map(|(v, (lo, hi))| format!("{v} in [{lo}, {hi}]"))
        .collect();
    parts.join(", ")
}

/// `(id + S_{i,i+1})(id - delta_{i+1} + delta_i delta_{i+1}) alpha = 0` for
/// every adjacent pair, together with the variant using shifts
/// `(id - E_{i+1} + E_i E_{i+1})`. Witness: `[i, form]` with form 0 for the
/// backward-difference version and 1 for the shift version.
pub fn check_swap_identity(n: usize) -> Result<IdentityReport> {
    check_n(n, 1, "swap identity")?;
    let mut rep = IdentityReport::new("swap", &[("n", n as i64)], format!("i in [1, {}]", n - 1));
    let alpha = alpha_poly(n);
    let zero = MultiPoly::zero(n);
    for i in 0..n.saturating_sub(1) {
        let id = ShiftOp::identity(n);
        let backward = &(&id - &ShiftOp::backward(n, i + 1))
            + &ShiftOp::backward(n, i).compose(&ShiftOp::backward(n, i + 1));
        let shift = &(&id - &ShiftOp::shift(n, i + 1, 1))
            + &ShiftOp::shift(n, i, 1).compose(&ShiftOp::shift(n, i + 1, 1));
        for (form, op) in [(0, backward), (1, shift)] {
            let q = op.apply(&alpha)?;
            let sym = &q + &q.swap_vars(i, i + 1);
            rep.check(&[i as i64 + 1, form], &sym, &zero);
        }
    }
    Ok(rep)
}

/// `alpha(n; k_1, ..., k_n) = (-1)^{n-1} alpha(n; k_2, ..., k_n, k_1 - n)`.
pub fn check_cycle_identity(n: usize) -> Result<IdentityReport> {
    check_n(n, 1, "cycle identity")?;
    let mut rep = IdentityReport::new("cycle", &[("n", n as i64)], "polynomial identity");
    let alpha = alpha_poly(n);
    let args: Vec<(usize, i64)> = (0..n)
        .map(|j| {
            if j + 1 < n {
                (j + 1, 0)
            } else {
                (0, -(n as i64))
            }
        })
        .collect();
    let mut rhs = alpha.substitute_affine(&args)?;
    if n % 2 == 0 {
        rhs = -&rhs;
    }
    rep.check(&[], &*alpha, &rhs);
    Ok(rep)
}

/// `e_p(Delta_1, ..., Delta_n) alpha = 0` for `p >= 1`.
pub fn check_ep_annihilation(n: usize, p: usize) -> Result<IdentityReport> {
    check_n(n, 1, "e_p annihilation")?;
    if p == 0 {
        return usage("e_p annihilation is stated for p >= 1");
    }
    let mut rep = IdentityReport::new(
        "ep-annihilation",
        &[("n", n as i64), ("p", p as i64)],
        "polynomial identity",
    );
    let vars: Vec<usize> = (0..n).collect();
    let op = elem_sym_op(n, p, &vars, OpBase::Forward);
    let out = op.apply(&alpha_poly(n))?;
    rep.check(&[p as i64], &out, &MultiPoly::zero(n));
    Ok(rep)
}

/// `alpha` with `k_r` shifted by `z` equals
/// `sum_{p=0}^{n-1} (-1)^p binom(n-1-p+z, n-1) e_p(E_j : j != r) alpha`,
/// as polynomials in `k` for each `z` in the range. Both sides have degree
/// at most `n - 1` in `z`, so `n` values of `z` certify the identity in `z`.
pub fn check_lemma_step3(
    n: usize,
    r: usize,
    z_range: RangeInclusive<i64>,
) -> Result<IdentityReport> {
    check_n(n, 1, "shift expansion")?;
    if r == 0 || r > n {
        return usage(format!("r must lie in [1, {n}]"));
    }
    let mut rep = IdentityReport::new(
        "lemma-step3",
        &[("n", n as i64), ("r", r as i64)],
        format!("z in [{}, {}]", z_range.start(), z_range.end()),
    );
    let alpha = alpha_poly(n);
    let others: Vec<usize> = (0..n).filter(|&v| v != r - 1).collect();
    // e_p over n - 1 operators vanishes for p >= n.
    let terms: Vec<MultiPoly> = (0..n)
        .map(|p| elem_sym_op(n, p, &others, OpBase::Shift).apply(&alpha))
        .collect::<Result<_>>()?;
    let nm1 = n as i64 - 1;
    let mut distinct = 0usize;
    for z in z_range {
        distinct += 1;
        let lhs = alpha.shift(r - 1, z);
        let mut rhs = MultiPoly::zero(n);
        for (p, t) in terms.iter().enumerate() {
            let mut c = BigRational::from_integer(binom(nm1 - p as i64 + z, nm1));
            if p % 2 == 1 {
                c = -c;
            }
            rhs.add_assign_scaled(t, &c);
        }
        rep.check(&[z], &lhs, &rhs);
    }
    if distinct < n {
        rep.note(format!(
            "only {distinct} values of z checked; {n} are needed to certify the identity in z"
        ));
    }
    Ok(rep)
}

/// Specialization identity for `e_p(E_1, ..., E_{n-j}) alpha(n)` at
/// `(k_1, ..., k_{n-j+1}) = (1, ..., n-j+1)`, expressed through interleaved
/// sums of `alpha(n - 1; ...)`. The free variables `k_{n-j+2}, ..., k_n` run
/// over disjoint increasing blocks of `n + 2` values each.
pub fn check_lemma_j23(n: usize, j: usize, p: usize) -> Result<IdentityReport> {
    check_n(n, 2, "specialization lemma")?;
    if j < 2 || j > n {
        return usage(format!("j must lie in [2, {n}]"));
    }
    let fixed = n - j + 1; // k_1..k_fixed are specialized
    let nfree = j - 1;
    let block = n as i64 + 2;
    let base = fixed as i64 + 1;
    let ranges: Vec<(i64, i64)> = (0..nfree)
        .map(|t| {
            let lo = base + t as i64 * block;
            (lo, lo + block - 1)
        })
        .collect();
    let names: Vec<String> = (0..nfree).map(|t| format!("k{}", fixed + 1 + t)).collect();
    let mut rep = IdentityReport::new(
        "lemma-j23",
        &[("n", n as i64), ("j", j as i64), ("p", p as i64)],
        describe_grid(&names, &ranges),
    );

    let vars: Vec<usize> = (0..n - j).collect();
    let lhs_poly = elem_sym_op(n, p, &vars, OpBase::Shift).apply(&alpha_poly(n))?;
    let assignment: Vec<Option<i64>> = (0..n)
        .map(|v| if v < fixed { Some(v as i64 + 1) } else { None })
        .collect();
    let lhs_poly = lhs_poly.eval_partial(&assignment)?;

    for free in grid(&ranges) {
        let mut point: Vec<i64> = (1..=fixed as i64).collect();
        point.extend(&free);
        let lhs = lhs_poly.eval(&point)?;

        let mut rhs = BigInt::zero();
        let mut bounds = vec![fixed as i64 + 1];
        bounds.extend(&free);
        for ls in interleavings(&bounds) {
            for i in 1..=fixed {
                let c = binom(fixed as i64 - i as i64, p as i64);
                if c.is_zero() {
                    continue;
                }
                let mut arg: Vec<i64> = (1..=fixed as i64).filter(|&x| x != i as i64).collect();
                arg.extend(&ls);
                rhs += c * alpha_operator(&arg)?;
            }
        }
        if p == 0 {
            for ls in interleavings(&free) {
                let mut arg: Vec<i64> = (1..=fixed as i64).collect();
                arg.extend(&ls);
                rhs += alpha_operator(&arg)?;
            }
        }
        rep.check(&free, &lhs, &BigRational::from_integer(rhs));
    }
    Ok(rep)
}

/// The interleaved sum of `alpha_m(n; l)` over `(l_i, ..., l_j)` between
/// `(k_i, ..., k_{j+1})` equals the backward differences in the remaining `l`
/// applied to the alternating sum of `alpha_{m+1}` with the middle block
/// `(k_i - 1, ..., k_{r-1} - 1, k_{r+1}, ..., k_{j+1})`.
///
/// Free variables: the `l` outside positions `i..=j` and `k_i, ..., k_{j+1}`,
/// each over `n + m + 3` values; the `k` blocks are disjoint and increasing.
pub fn check_summation_lemma(n: usize, m: usize, i: usize, j: usize) -> Result<IdentityReport> {
    check_n(n, 2, "summation lemma")?;
    if i == 0 || i > j || j >= n {
        return usage(format!("need 1 <= i <= j < n, got i = {i}, j = {j}"));
    }
    let width = (n + m + 3) as i64;
    let outer: Vec<usize> = (0..n).filter(|&v| v + 1 < i || v + 1 > j).collect();
    let nk = j - i + 2;
    let mut ranges: Vec<(i64, i64)> = outer.iter().map(|_| (0, width - 1)).collect();
    let mut names: Vec<String> = outer.iter().map(|v| format!("l{}", v + 1)).collect();
    for t in 0..nk {
        let lo = 1 + t as i64 * width;
        ranges.push((lo, lo + width - 1));
        names.push(format!("k{}", i + t));
    }
    let mut rep = IdentityReport::new(
        "summation-lemma",
        &[
            ("n", n as i64),
            ("m", m as i64),
            ("i", i as i64),
            ("j", j as i64),
        ],
        describe_grid(&names, &ranges),
    );

    let lower = alpha_m_poly(n, m)?;
    let mut diff = ShiftOp::identity(n);
    for &v in &outer {
        diff = diff.compose(&ShiftOp::backward(n, v));
    }
    let upper = diff.apply(&*alpha_m_poly(n, m + 1)?)?;
    let mut lower_cache: HashMap<Vec<i64>, BigRational> = HashMap::new();

    for pt in grid(&ranges) {
        let (ls, ks) = pt.split_at(outer.len());
        let place = |middle: &[i64]| -> Vec<i64> {
            let mut full = vec![0i64; n];
            for (slot, &v) in outer.iter().enumerate() {
                full[v] = ls[slot];
            }
            full[i - 1..j].copy_from_slice(middle);
            full
        };
        let mut lhs = BigRational::zero();
        for mid in interleavings(ks) {
            let full = place(&mid);
            if let Some(v) = lower_cache.get(&full) {
                lhs += v;
                continue;
            }
            let v = lower.eval(&full)?;
            lhs += &v;
            lower_cache.insert(full, v);
        }
        let mut rhs = BigRational::zero();
        for r in 0..nk {
            // k-block index r corresponds to k_{i+r}
            let mid: Vec<i64> = ks[..r]
                .iter()
                .map(|x| x - 1)
                .chain(ks[r + 1..].iter().copied())
                .collect();
            let v = upper.eval(&place(&mid))?;
            if r % 2 == 0 {
                rhs += v;
            } else {
                rhs -= v;
            }
        }
        rep.check(&pt, &lhs, &rhs);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_cycle_and_annihilation_small() {
        for n in 1..=4 {
            assert!(check_swap_identity(n).unwrap().holds(), "swap n={n}");
            assert!(check_cycle_identity(n).unwrap().holds(), "cycle n={n}");
            for p in 1..=n {
                assert!(
                    check_ep_annihilation(n, p).unwrap().holds(),
                    "ep n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn step3_examples() {
        assert!(check_lemma_step3(2, 1, 0..=0).unwrap().holds());
        assert!(check_lemma_step3(3, 2, 0..=3).unwrap().holds());
        assert!(check_lemma_step3(4, 4, 0..=4).unwrap().holds());
        let r = check_lemma_step3(3, 1, 0..=0).unwrap();
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn j23_examples() {
        assert!(check_lemma_j23(3, 2, 0).unwrap().holds());
        assert!(check_lemma_j23(4, 3, 1).unwrap().holds());
        assert!(check_lemma_j23(4, 2, 2).unwrap().holds());
    }

    #[test]
    fn summation_examples() {
        assert!(check_summation_lemma(2, 0, 1, 1).unwrap().holds());
        assert!(check_summation_lemma(3, 0, 1, 2).unwrap().holds());
        assert!(check_summation_lemma(3, 1, 2, 2).unwrap().holds());
    }

    #[test]
    fn a_wrong_identity_is_reported_with_a_witness() {
        let mut rep = IdentityReport::new("t", &[], "");
        let a = alpha_poly(2);
        rep.check(&[0], &*a, &MultiPoly::zero(2));
        assert!(!rep.holds());
    }
}
