//! Refined counts as coefficients of specializations of `alpha`.
//!
//! Specialize `alpha(n; k_1, ..., k_c, c+1, ..., n-d, k_{n-d+1}, ..., k_n)` and
//! expand it over
//! `prod_j binom(k_j - c - 1, s_{c+1-j} - 1) * prod_j binom(k_{n-d+j} - n + d - 2 + i_j, i_j - 1)`
//! with the sign `(-1)^{s_1 + ... + s_c + c}`. The coefficient on index
//! `(s; i)` is `B(n; s; i)`, which equals the refined count for strictly
//! increasing `s` and `i` and is defined for all tuples in `[1, n]^{c+d}`.
//!
//! Forward differences lower the bottom basis index and backward differences
//! the top one, and the bases take the value `[index = 1]` at `k = c + 1`
//! and `k = n - d` respectively, so each coefficient is an iterated
//! difference evaluated at one point.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::enumerate::{CountTable, RefinementSpec};
use crate::error::{usage, Result};
use crate::exactmath::{to_integer, MultiPoly};
use crate::shiftops::{alpha_operator, alpha_poly, ShiftOp, SYMBOLIC_HARD_MAX};

/// Documented practical bound on `c + d` for coefficient tables.
pub const COEFF_MAX_CD: usize = 3;
/// Largest `c + d` coefficient extraction will attempt at all.
pub const COEFF_HARD_MAX_CD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub n: usize,
    pub c: usize,
    pub d: usize,
    /// Keyed by `(s_1, ..., s_c, i_1, ..., i_d)`.
    pub entries: BTreeMap<Vec<i64>, BigInt>,
}

impl CoefficientTable {
    /// `B(n; s; i)`, 0 outside `[1, n]^{c+d}`.
    pub fn get(&self, s: &[i64], i: &[i64]) -> BigInt {
        debug_assert_eq!((s.len(), i.len()), (self.c, self.d));
        let mut key = s.to_vec();
        key.extend_from_slice(i);
        self.get_flat(&key)
    }

    pub fn get_flat(&self, key: &[i64]) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn family_label(c: usize, d: usize) -> String {
        format!("B(c={c},d={d})")
    }

    pub fn to_count_table(&self) -> CountTable {
        let names: Vec<String> = (1..=self.c)
            .map(|t| format!("s{t}"))
            .chain((1..=self.d).map(|t| format!("i{t}")))
            .collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut t = CountTable::new(Self::family_label(self.c, self.d), self.n, &name_refs);
        for (k, v) in &self.entries {
            t.set(k.clone(), v.clone());
        }
        t
    }

    pub fn from_count_table(t: &CountTable, c: usize, d: usize) -> Result<Self> {
        if t.arity() != c + d || t.family != Self::family_label(c, d) {
            return usage("table does not hold coefficients of the requested shape");
        }
        Ok(CoefficientTable {
            n: t.n,
            c,
            d,
            entries: t.entries.clone(),
        })
    }
}

#[derive(Clone, Copy)]
enum Diff {
    Forward,
    Backward,
}

fn diff(p: &MultiPoly, var: usize, kind: Diff) -> MultiPoly {
    match kind {
        Diff::Forward => &p.shift(var, 1) - p,
        Diff::Backward => p - &p.shift(var, -1),
    }
}

fn fix_var(p: &MultiPoly, var: usize, value: i64) -> Result<MultiPoly> {
    let mut a = vec![None; p.nvars()];
    a[var] = Some(value);
    p.eval_partial(&a)
}

/// Iterated differences of `p` in `var`, each evaluated at `base`, for
/// exponents `0..count`.
fn peel(p: &MultiPoly, var: usize, kind: Diff, base: i64, count: usize) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = p.clone();
    for _ in 0..count {
        out.push(fix_var(&cur, var, base)?);
        cur = diff(&cur, var, kind);
    }
    Ok(out)
}

fn check_shape(n: usize, c: usize, d: usize) -> Result<()> {
    if n == 0 || c + d > n {
        return usage("need n >= 1 and c + d <= n");
    }
    if n > SYMBOLIC_HARD_MAX {
        return usage(format!(
            "coefficient tables are limited to n <= {SYMBOLIC_HARD_MAX}"
        ));
    }
    if c + d > COEFF_HARD_MAX_CD {
        return usage(format!(
            "coefficient tables are limited to c + d <= {COEFF_HARD_MAX_CD}"
        ));
    }
    Ok(())
}

fn compute_table(n: usize, c: usize, d: usize) -> Result<CoefficientTable> {
    let alpha = alpha_poly(n);
    let middle: Vec<Option<i64>> = (0..n)
        .map(|v| {
            if v >= c && v < n - d {
                Some(v as i64 + 1)
            } else {
                None
            }
        })
        .collect();
    let p = alpha.eval_partial(&middle)?;

    // Output index order s_1..s_c, i_1..i_d; s_t pairs with k_{c+1-t}.
    let mut plan: Vec<(usize, Diff, i64)> = (1..=c)
        .map(|t| (c - t, Diff::Forward, c as i64 + 1))
        .collect();
    plan.extend((0..d).map(|t| (n - d + t, Diff::Backward, (n - d) as i64)));

    let mut level: Vec<(Vec<i64>, MultiPoly)> = vec![(Vec::new(), p)];
    for &(var, kind, base) in &plan {
        let mut next = Vec::with_capacity(level.len() * n);
        for (key, q) in level {
            for (idx, r) in peel(&q, var, kind, base, n)?.into_iter().enumerate() {
                let mut k = key.clone();
                k.push(idx as i64 + 1);
                next.push((k, r));
            }
        }
        level = next;
    }

    let mut entries = BTreeMap::new();
    for (key, q) in level {
        let v = q
            .as_constant()
            .ok_or_else(|| crate::Error::Consistency("coefficient is not a constant".into()))?;
        let mut v = to_integer(&v, "coefficient")?;
        let ssum: i64 = key[..c].iter().sum();
        if (ssum + c as i64) % 2 != 0 {
            v = -v;
        }
        entries.insert(key, v);
    }
    Ok(CoefficientTable { n, c, d, entries })
}

type TableCache = OnceLock<Mutex<HashMap<(usize, usize, usize), Arc<CoefficientTable>>>>;
static TABLES: TableCache = OnceLock::new();

/// `B(n; s; i)` on all of `[1, n]^{c+d}`; cached per `(n, c, d)`.
pub fn extract_coefficients(n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>> {
    check_shape(n, c, d)?;
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().unwrap().get(&(n, c, d)) {
        return Ok(t.clone());
    }
    let t = Arc::new(compute_table(n, c, d)?);
    Ok(map.lock().unwrap().entry((n, c, d)).or_insert(t).clone())
}

/// The same coefficients, requested for use on non-increasing index tuples.
pub fn extended_table(n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>> {
    extract_coefficients(n, c, d)
}

/// Applies `Delta^{s_c - 1}` ... `Delta^{s_1 - 1}` to `k_1, ..., k_c` and
/// `delta^{i_1 - 1}` ... `delta^{i_d - 1}` to `k_{n-d+1}, ..., k_n`, multiplies by
/// `(-1)^{s_1 + ... + s_c + c}` and evaluates with the bottom block at 1, the
/// top block at `m` and the middle variables at `free_cols`.
///
/// The positions in `bottom` and `top` may be any integers >= 1; they are
/// exponents here, not column indices.
pub fn extract_via_delta(
    n: usize,
    m: i64,
    bottom: &[usize],
    top: &[usize],
    free_cols: &[i64],
) -> Result<BigInt> {
    let c = bottom.len();
    let d = top.len();
    if c + d > n || free_cols.len() != n - c - d {
        return usage("need c + d <= n and n - c - d free columns");
    }
    if bottom.iter().chain(top).any(|&x| x == 0) {
        return usage("difference exponents are positions minus one; positions must be >= 1");
    }
    if free_cols.windows(2).any(|w| w[0] >= w[1]) {
        return usage("free columns must be strictly increasing");
    }
    let mut op = ShiftOp::identity(n);
    for (t, &s) in bottom.iter().enumerate() {
        op = op.compose(&ShiftOp::forward(n, c - 1 - t).pow(s as u32 - 1));
    }
    for (t, &i) in top.iter().enumerate() {
        op = op.compose(&ShiftOp::backward(n, n - d + t).pow(i as u32 - 1));
    }
    let mut point = vec![1i64; c];
    point.extend_from_slice(free_cols);
    point.extend(std::iter::repeat(m).take(d));
    let mut total = BigInt::zero();
    let mut shifted = point.clone();
    for (a, coeff) in op.terms() {
        for v in 0..n {
            shifted[v] = point[v] + a[v];
        }
        let val = alpha_operator(&shifted)?;
        total += to_integer(
            &(coeff * num_rational::BigRational::from_integer(val)),
            "difference",
        )?;
    }
    let ssum: usize = bottom.iter().sum();
    if (ssum + c) % 2 == 1 {
        total = -total;
    }
    if total < BigInt::zero() {
        return Err(crate::Error::Consistency(format!(
            "negative count {total} from difference extraction"
        )));
    }
    Ok(total)
}

/// `A(n; -; i_1, ..., i_d) = alpha(n - d; complement of {i} in [1, n])`.
pub fn complement_alpha(n: usize, top: &[usize]) -> Result<BigInt> {
    RefinementSpec::new(n, Vec::new(), top.to_vec())?;
    let rest: Vec<i64> = (1..=n)
        .filter(|x| !top.contains(x))
        .map(|x| x as i64)
        .collect();
    alpha_operator(&rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{count_partial, increasing_tuples, refined_table, Family};

    fn as_vec(t: &CoefficientTable) -> Vec<i64> {
        t.entries
            .values()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn single_top_row() {
        assert_eq!(
            as_vec(&extract_coefficients(3, 0, 1).unwrap()),
            vec![2, 3, 2]
        );
        assert_eq!(as_vec(&extract_coefficients(1, 0, 1).unwrap()), vec![1]);
        let bottom = extract_coefficients(4, 1, 0).unwrap();
        assert_eq!(as_vec(&bottom), vec![7, 14, 14, 7]);
    }

    #[test]
    fn top_bottom_matches_enumeration() {
        for n in 2..=5 {
            let b = extract_coefficients(n, 1, 1).unwrap();
            let tb = refined_table(n, Family::TopBottom).unwrap();
            for s in 1..=n as i64 {
                for i in 1..=n as i64 {
                    assert_eq!(b.get(&[s], &[i]), tb.get(&[i, s]), "n={n} s={s} i={i}");
                }
            }
        }
    }

    #[test]
    fn increasing_slices_match_partial_counts() {
        for n in 1..=4usize {
            for c in 0..=3usize {
                for d in 0..=3 - c {
                    if c + d > n {
                        continue;
                    }
                    let b = extract_coefficients(n, c, d).unwrap();
                    for s in increasing_tuples(c, 1, n as i64) {
                        for i in increasing_tuples(d, 1, n as i64) {
                            let spec = RefinementSpec::new(
                                n,
                                s.iter().map(|&x| x as usize).collect(),
                                i.iter().map(|&x| x as usize).collect(),
                            )
                            .unwrap();
                            assert_eq!(b.get(&s, &i), count_partial(&spec).unwrap(), "{spec:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_alpha(3, &[2]).unwrap(), 3.into());
        assert_eq!(complement_alpha(4, &[1, 3]).unwrap(), 3.into());
        assert_eq!(complement_alpha(5, &[1, 2]).unwrap(), 7.into());
        assert!(complement_alpha(3, &[2, 1]).is_err());
    }

    #[test]
    fn delta_route_without_operators_is_alpha() {
        assert_eq!(
            extract_via_delta(3, 0, &[], &[], &[1, 2, 4]).unwrap(),
            14.into()
        );
    }

    #[test]
    fn delta_route_matches_coefficients() {
        // With the top block at n - d, the bottom at 1 and free columns
        // (2, ..., n - d) shifted down by c, the difference extraction
        // reproduces B(n; s; i) up to translation.
        for n in 2..=5usize {
            let b = extract_coefficients(n, 1, 1).unwrap();
            for s in 1..=n {
                for i in 1..=n {
                    let free: Vec<i64> = (2..=(n - 1) as i64).map(|x| x - 1).collect();
                    let v = extract_via_delta(n, (n - 2) as i64, &[s], &[i], &free);
                    match v {
                        Ok(v) => {
                            assert_eq!(v, b.get(&[s as i64], &[i as i64]), "n={n} s={s} i={i}")
                        }
                        Err(e) => panic!("n={n} s={s} i={i}: {e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(extract_coefficients(2, 2, 1).is_err());
        assert!(extract_coefficients(SYMBOLIC_HARD_MAX + 1, 0, 1).is_err());
        assert!(extract_coefficients(6, 3, 2).is_err());
        assert!(extract_via_delta(3, 1, &[1], &[], &[1]).is_err());
    }
}
