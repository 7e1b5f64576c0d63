//! Monotone triangles, interleavings and the triangle recursion.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::asm::Asm;
use crate::error::{usage, Result};

/// A monotone triangle, stored bottom row first: `rows[0]` has `n` entries,
/// `rows[n-1]` is the apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonotoneTriangle {
    rows: Vec<Vec<i64>>,
}

impl MonotoneTriangle {
    /// Validates shape, strict row increase and the interleaving condition
    /// between consecutive rows.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return usage("a monotone triangle needs at least one row");
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n - r {
                return usage(format!(
                    "row {r} has {} entries, expected {}",
                    row.len(),
                    n - r
                ));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return usage(format!("row {r} is not strictly increasing"));
            }
        }
        for r in 1..n {
            let below = &rows[r - 1];
            for (j, &x) in rows[r].iter().enumerate() {
                if x < below[j] || x > below[j + 1] {
                    return usage(format!("row {r} does not interleave the row below"));
                }
            }
        }
        Ok(MonotoneTriangle { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn bottom(&self) -> &[i64] {
        &self.rows[0]
    }

    /// Whether the bottom row is `(1, ..., n)`.
    pub fn is_complete(&self) -> bool {
        self.rows[0].iter().copied().eq(1..=self.n() as i64)
    }
}

/// All `(l_1, ..., l_{m-1})` with `k_t <= l_t <= k_{t+1}` and
/// `l_t != l_{t+1}`, for bounds `(k_1, ..., k_m)`. A single bound yields one
/// empty sequence.
pub fn interleavings(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if bounds.is_empty() {
        return out;
    }
    let mut cur = Vec::with_capacity(bounds.len() - 1);
    fn rec(bounds: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let t = cur.len();
        if t + 1 == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for l in bounds[t]..=bounds[t + 1] {
            if cur.last() == Some(&l) {
                continue;
            }
            cur.push(l);
            rec(bounds, cur, out);
            cur.pop();
        }
    }
    rec(bounds, &mut cur, &mut out);
    out
}

/// Strictly increasing tuples of length `len` with entries in `[lo, hi]`,
/// in lexicographic order.
pub fn increasing_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, next: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = (len - cur.len()) as i64;
        for x in next..=hi - remaining + 1 {
            cur.push(x);
            rec(len, x + 1, hi, cur, out);
            cur.pop();
        }
    }
    rec(len, lo, hi, &mut cur, &mut out);
    out
}

static TRIANGLES: OnceLock<Mutex<HashMap<Vec<i64>, BigInt>>> = OnceLock::new();

fn count_memo(bottom: &[i64]) -> BigInt {
    if bottom.len() <= 1 {
        return BigInt::one();
    }
    let memo = TRIANGLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().unwrap().get(bottom) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for row in interleavings(bottom) {
        total += count_memo(&row);
    }
    memo.lock().unwrap().insert(bottom.to_vec(), total.clone());
    total
}

/// Number of monotone triangles with the given strictly increasing bottom row.
pub fn count_monotone_triangles(bottom: &[i64]) -> Result<BigInt> {
    if bottom.is_empty() {
        return usage("bottom row must be non-empty");
    }
    if bottom.windows(2).any(|w| w[0] >= w[1]) {
        return usage("bottom row must be strictly increasing");
    }
    Ok(count_memo(bottom))
}

/// Converts a complete monotone triangle into its ASM.
///
/// Reading rows from the apex down, row `i` of the matrix has a 1 in the
/// columns that enter the `i`-th triangle row and a -1 in those that leave.
pub fn mt_to_asm(t: &MonotoneTriangle) -> Result<Asm> {
    if !t.is_complete() {
        return usage("only complete monotone triangles correspond to ASMs");
    }
    let n = t.n();
    let mut entries = vec![0i8; n * n];
    let mut prev = vec![false; n];
    for i in 0..n {
        let row = &t.rows[n - 1 - i];
        let mut cur = vec![false; n];
        for &x in row {
            cur[(x - 1) as usize] = true;
        }
        for j in 0..n {
            entries[i * n + j] = i8::from(cur[j]) - i8::from(prev[j]);
        }
        prev = cur;
    }
    Asm::new(n, entries)
}

/// Inverse of [`mt_to_asm`]: triangle row `i` (from the apex) lists the
/// columns whose partial column sum over the first `i` matrix rows is 1.
pub fn asm_to_mt(a: &Asm) -> MonotoneTriangle {
    let n = a.n();
    let mut sums = vec![0i8; n];
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        for (j, s) in sums.iter_mut().enumerate() {
            *s += a.get(i, j);
        }
        rows.push(
            (0..n)
                .filter(|&j| sums[j] == 1)
                .map(|j| j as i64 + 1)
                .collect::<Vec<_>>(),
        );
    }
    rows.reverse();
    MonotoneTriangle { rows }
}
