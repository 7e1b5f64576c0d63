//! The monotone-triangle polynomial `alpha(n; k_1, ..., k_n)` and the
//! `alpha_m` family.
//!
//! `alpha(n) = prod_{p<q} (id - E_p + E_p E_q) prod_{i<j} (k_j - k_i)/(j - i)`.
//! `alpha_m(n) = prod_{p<q} (id - delta_p + delta_p delta_q)
//! det binom(k_i - n + j + m, j + m - 1)`. The two operator forms differ by a
//! uniform shift of all variables, which the Vandermonde quotient ignores, so
//! `alpha_0 = alpha`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ShiftOp;
use crate::error::{usage, Result};
use crate::exactmath::{binom_poly, factorial, to_integer, MultiPoly};

/// Largest `n` for which the full polynomial is built and cached by default;
/// also the documented practical bound for symbolic work.
pub const SYMBOLIC_MAX: usize = 6;
/// Largest `n` symbolic computations will attempt at all.
pub const SYMBOLIC_HARD_MAX: usize = 7;

type PolyCache<K> = OnceLock<Mutex<HashMap<K, Arc<MultiPoly>>>>;

static ALPHA: PolyCache<usize> = OnceLock::new();
static ALPHA_M: PolyCache<(usize, usize)> = OnceLock::new();
static OPERATOR: OnceLock<Mutex<HashMap<usize, Arc<ShiftOp>>>> = OnceLock::new();

fn cached<K, V, F>(cache: &OnceLock<Mutex<HashMap<K, Arc<V>>>>, key: K, build: F) -> Arc<V>
where
    K: std::hash::Hash + Eq + Copy,
    F: FnOnce() -> V,
{
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    // Built outside the lock so independent keys can be computed in parallel.
    let v = Arc::new(build());
    map.lock().unwrap().entry(key).or_insert(v).clone()
}

/// `prod_{i<j} (j - i) = prod_{j<n} j!`.
fn superfactorial(n: usize) -> BigInt {
    (0..n as u32).map(factorial).product()
}

fn integer_vandermonde(n: usize) -> MultiPoly {
    let mut p = MultiPoly::one(n);
    for j in 0..n {
        for i in 0..j {
            let diff = &MultiPoly::var(n, j) - &MultiPoly::var(n, i);
            p = &p * &diff;
        }
    }
    p
}

/// `prod_{i<j} (k_j - k_i)/(j - i)`.
pub fn vandermonde_quotient(n: usize) -> MultiPoly {
    integer_vandermonde(n).scale(&BigRational::new(BigInt::one(), superfactorial(n)))
}

/// Applies `prod_{p<q} (id - E_p + E_p E_q)` one factor at a time, as
/// `f - E_p (f - E_q f)`.
fn apply_alpha_operator(mut f: MultiPoly) -> MultiPoly {
    let n = f.nvars();
    for p in 0..n {
        for q in p + 1..n {
            let inner = &f - &f.shift(q, 1);
            f = &f - &inner.shift(p, 1);
        }
    }
    f
}

/// The polynomial `alpha(n)`; cached per `n`.
pub fn alpha_poly(n: usize) -> Arc<MultiPoly> {
    cached(&ALPHA, n, || {
        // Work on the integer Vandermonde and divide once at the end.
        let f = apply_alpha_operator(integer_vandermonde(n));
        f.scale(&BigRational::new(BigInt::one(), superfactorial(n)))
    })
}

/// `alpha(n; k)` for an arbitrary integer tuple; `n = k.len()`.
///
/// Up to [`SYMBOLIC_MAX`] this evaluates the cached polynomial, beyond it the
/// expanded operator is summed over shifted Vandermonde values. The empty
/// tuple gives 1.
pub fn alpha_operator(k: &[i64]) -> Result<BigInt> {
    if k.is_empty() {
        return Ok(BigInt::one());
    }
    if k.len() > SYMBOLIC_MAX {
        return alpha_shift_sum(k);
    }
    let v = alpha_poly(k.len()).eval(k)?;
    to_integer(&v, "alpha")
}

/// The operator `prod_{p<q} (id - E_p + E_p E_q)` expanded; cached per `n`.
pub fn alpha_expanded_operator(n: usize) -> Arc<ShiftOp> {
    cached(&OPERATOR, n, || {
        let mut op = ShiftOp::identity(n);
        for p in 0..n {
            for q in p + 1..n {
                let factor = &(&ShiftOp::identity(n) - &ShiftOp::shift(n, p, 1))
                    + &ShiftOp::shift(n, p, 1).compose(&ShiftOp::shift(n, q, 1));
                op = op.compose(&factor);
            }
        }
        op
    })
}

/// `alpha(n; k)` as `sum_a c_a V(k + a)` with `V` the Vandermonde quotient
/// evaluated numerically. Independent of [`alpha_poly`].
pub fn alpha_shift_sum(k: &[i64]) -> Result<BigInt> {
    let n = k.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let op = alpha_expanded_operator(n);
    let mut total = BigRational::zero();
    let mut point = vec![0i64; n];
    for (a, c) in op.terms() {
        for v in 0..n {
            point[v] = k[v] + a[v];
        }
        let mut vdm = BigInt::one();
        for j in 0..n {
            for i in 0..j {
                vdm *= BigInt::from(point[j] - point[i]);
            }
        }
        total += c * BigRational::from_integer(vdm);
    }
    total /= BigRational::from_integer(superfactorial(n));
    to_integer(&total, "alpha shift sum")
}

/// Determinant of `binom(k_i - n + j + m, j + m - 1)`, `1 <= i, j <= n`, by
/// expansion over column subsets.
fn binomial_determinant(n: usize, m: usize) -> MultiPoly {
    let entry = |i: usize, j: usize| {
        // 0-based i, j
        let jj = j as i64 + 1;
        binom_poly(n, i, jj + m as i64 - n as i64, (jj as usize + m - 1) as u32)
    };
    // minors[S]: determinant of rows 0..|S| against columns S
    let mut minors: Vec<MultiPoly> = vec![MultiPoly::zero(n); 1 << n];
    minors[0] = MultiPoly::one(n);
    for s in 1usize..(1 << n) {
        let row = s.count_ones() as usize - 1;
        let mut acc = MultiPoly::zero(n);
        // Laplace along the last row; sign by position of the column in S.
        let mut pos = 0;
        for col in 0..n {
            if s & (1 << col) == 0 {
                continue;
            }
            let rest = &minors[s & !(1 << col)];
            if !rest.is_zero() {
                let term = &entry(row, col) * rest;
                let sign = if (row - pos) % 2 == 0 { 1 } else { -1 };
                acc.add_assign_scaled(&term, &BigRational::from_integer(sign.into()));
            }
            pos += 1;
        }
        minors[s] = acc;
    }
    minors.pop().unwrap()
}

/// Applies `prod_{p<q} (id - delta_p + delta_p delta_q)` as
/// `f - delta_p (f - delta_q f)`.
fn apply_backward_alpha_operator(mut f: MultiPoly) -> MultiPoly {
    let n = f.nvars();
    let delta = |g: &MultiPoly, v: usize| g - &g.shift(v, -1);
    for p in 0..n {
        for q in p + 1..n {
            let inner = &f - &delta(&f, q);
            f = &f - &delta(&inner, p);
        }
    }
    f
}

/// The polynomial `alpha_m(n)`; cached per `(n, m)`.
pub fn alpha_m_poly(n: usize, m: usize) -> Result<Arc<MultiPoly>> {
    if n == 0 {
        return usage("alpha_m requires n >= 1");
    }
    Ok(cached(&ALPHA_M, (n, m), || {
        apply_backward_alpha_operator(binomial_determinant(n, m))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::shiftops::ShiftOp;

    /// Monotone-triangle count by direct recursion, used as an oracle.
    fn triangles(bottom: &[i64]) -> u64 {
        if bottom.len() <= 1 {
            return 1;
        }
        fn rec(bottom: &[i64], pos: usize, prev: Option<i64>, cur: &mut Vec<i64>) -> u64 {
            if pos + 1 == bottom.len() {
                return triangles(cur);
            }
            let mut total = 0;
            for l in bottom[pos]..=bottom[pos + 1] {
                if prev == Some(l) {
                    continue;
                }
                cur.push(l);
                total += rec(bottom, pos + 1, Some(l), cur);
                cur.pop();
            }
            total
        }
        rec(bottom, 0, None, &mut Vec::new())
    }

    #[test]
    fn small_alpha_values() {
        assert_eq!(alpha_operator(&[5]).unwrap(), 1.into());
        assert_eq!(alpha_operator(&[1, 3]).unwrap(), 3.into());
        assert_eq!(alpha_operator(&[1, 2, 3]).unwrap(), 7.into());
        assert_eq!(alpha_operator(&[1, 2, 4]).unwrap(), 14.into());
        assert_eq!(alpha_operator(&[]).unwrap(), 1.into());
    }

    #[test]
    fn alpha_two_is_linear() {
        let p = alpha_poly(2);
        let expect = &(&MultiPoly::var(2, 1) - &MultiPoly::var(2, 0)) + &MultiPoly::one(2);
        assert_eq!(*p, expect);
        assert_eq!(*alpha_poly(1), MultiPoly::one(1));
    }

    #[test]
    fn alpha_degree_bound() {
        for n in 1..=5 {
            let p = alpha_poly(n);
            for v in 0..n {
                assert!((p.degree_in(v).unwrap_or(0) as usize) < n);
            }
        }
    }

    fn increasing(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in lo..=hi {
            for mut rest in increasing(n - 1, first + 1, hi) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn polynomial_and_shift_sum_agree_with_recursion() {
        for n in 1..=4usize {
            for k in increasing(n, 1, n as i64 + 3) {
                let want = BigInt::from(triangles(&k));
                assert_eq!(alpha_operator(&k).unwrap(), want, "{k:?}");
                assert_eq!(alpha_shift_sum(&k).unwrap(), want, "{k:?}");
            }
        }
    }

    #[test]
    fn shift_sum_matches_polynomial_off_the_increasing_domain() {
        for k in [[3i64, 1, 2], [0, 0, 5], [-2, 4, -1]] {
            assert_eq!(alpha_shift_sum(&k).unwrap(), alpha_operator(&k).unwrap());
        }
    }

    #[test]
    fn alpha_zero_is_alpha() {
        for n in 1..=4 {
            assert_eq!(*alpha_m_poly(n, 0).unwrap(), *alpha_poly(n));
        }
        assert_eq!(binomial_determinant(3, 0), vandermonde_quotient(3));
    }

    #[test]
    fn alpha_one_for_a_single_variable() {
        // det (binom(k_1 + 1, 1)) = k_1 + 1
        let p = alpha_m_poly(1, 1).unwrap();
        assert_eq!(*p, MultiPoly::linear(1, 0, 1));
        let d = ShiftOp::backward(1, 0).apply(&p).unwrap();
        assert_eq!(d, MultiPoly::one(1));
    }

    #[test]
    fn backward_differences_lower_m() {
        for n in 1..=4 {
            let mut all = ShiftOp::identity(n);
            for v in 0..n {
                all = all.compose(&ShiftOp::backward(n, v));
            }
            for m in 1..=3 {
                let hi = alpha_m_poly(n, m).unwrap();
                let lo = alpha_m_poly(n, m - 1).unwrap();
                assert_eq!(all.apply(&hi).unwrap(), *lo, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn vandermonde_quotient_is_integral_on_integers() {
        let v = vandermonde_quotient(3);
        assert_eq!(v.eval(&[1, 2, 3]).unwrap(), rat(1));
        assert_eq!(v.eval(&[1, 2, 4]).unwrap(), rat(3));
    }
}
