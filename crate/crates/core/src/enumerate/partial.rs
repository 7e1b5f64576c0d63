//! The middle matrices obtained from an ASM by removing its top `d` and bottom
//! `c` rows, characterized by column conditions alone.
//!
//! For a spec with bottom positions `S` and top positions `I`, the matrices
//! have `n - c - d` rows and `n` columns, alternating rows with sum 1 and
//! alternating columns where
//! - the first non-zero entry of column `j` is -1 iff `j` is in `I`,
//! - the column sum is 1 if `j` is in neither set, -1 if in both, else 0.
//!
//! With the first sign fixed, a column's sum is determined by the parity of
//! its number of non-zero entries: odd iff `j` lies in neither or both sets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RefinementSpec {
    pub n: usize,
    /// Column positions `s_1 < ... < s_c` of the removed bottom rows.
    pub bottom: Vec<usize>,
    /// Column positions `i_1 < ... < i_d` of the removed top rows.
    pub top: Vec<usize>,
}

impl RefinementSpec {
    pub fn new(n: usize, bottom: Vec<usize>, top: Vec<usize>) -> Result<Self> {
        let spec = RefinementSpec { n, bottom, top };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return usage("n must be positive");
        }
        if self.bottom.len() + self.top.len() > self.n {
            return usage("c + d must not exceed n");
        }
        for list in [&self.bottom, &self.top] {
            if list.iter().any(|&x| x == 0 || x > self.n) {
                return usage(format!("positions must lie in [1, {}]", self.n));
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return usage("positions must be strictly increasing");
            }
        }
        Ok(())
    }

    pub fn c(&self) -> usize {
        self.bottom.len()
    }

    pub fn d(&self) -> usize {
        self.top.len()
    }

    pub fn rows(&self) -> usize {
        self.n - self.c() - self.d()
    }

    /// Sign of the first non-zero entry of 0-based column `j`.
    fn first_sign(&self, j: usize) -> i8 {
        if self.top.contains(&(j + 1)) {
            -1
        } else {
            1
        }
    }

    /// Bitmask of columns that must carry an odd number of non-zero entries.
    fn odd_columns(&self) -> u32 {
        (0..self.n)
            .filter(|&j| self.top.contains(&(j + 1)) == self.bottom.contains(&(j + 1)))
            .fold(0, |m, j| m | (1 << j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAsm {
    pub spec: RefinementSpec,
    /// Row-major, `spec.rows() x spec.n`.
    pub entries: Vec<i8>,
}

/// Calls `emit(row, new_parity)` for every admissible row given the current
/// column parities.
fn for_each_row(spec: &RefinementSpec, parity: u32, mut emit: impl FnMut(&[i8], u32)) {
    let n = spec.n;
    let mut row = vec![0i8; n];
    // Required sign of the next non-zero entry in column j.
    let need: Vec<i8> = (0..n)
        .map(|j| {
            let s = spec.first_sign(j);
            if parity & (1 << j) == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    fn rec(
        j: usize,
        next: i8,
        need: &[i8],
        parity: u32,
        row: &mut [i8],
        emit: &mut dyn FnMut(&[i8], u32),
    ) {
        let n = row.len();
        if j == n {
            // Row must end on +1, i.e. the next expected sign is -1.
            if next == -1 {
                emit(row, parity);
            }
            return;
        }
        row[j] = 0;
        rec(j + 1, next, need, parity, row, emit);
        if need[j] == next {
            row[j] = next;
            rec(j + 1, -next, need, parity ^ (1 << j), row, emit);
            row[j] = 0;
        }
    }
    rec(0, 1, &need, parity, &mut row, &mut emit);
}

/// Number of middle matrices for `spec`, by a dynamic program over column
/// parities, one row at a time.
pub fn count_partial(spec: &RefinementSpec) -> Result<BigInt> {
    spec.validate()?;
    if spec.n > 20 {
        return usage("count_partial supports n <= 20");
    }
    let mut states: HashMap<u32, BigInt> = HashMap::from([(0, BigInt::from(1))]);
    for _ in 0..spec.rows() {
        let mut next: HashMap<u32, BigInt> = HashMap::new();
        for (&parity, count) in &states {
            for_each_row(spec, parity, |_, p| {
                *next.entry(p).or_insert_with(BigInt::zero) += count;
            });
        }
        states = next;
    }
    Ok(states
        .remove(&spec.odd_columns())
        .unwrap_or_else(BigInt::zero))
}

/// Every middle matrix for `spec`, generated explicitly.
pub fn generate_partial(spec: &RefinementSpec) -> Result<Vec<PartialAsm>> {
    spec.validate()?;
    let mut out = Vec::new();
    let rows = spec.rows();
    let target = spec.odd_columns();
    fn rec(
        spec: &RefinementSpec,
        left: usize,
        parity: u32,
        target: u32,
        acc: &mut Vec<i8>,
        out: &mut Vec<PartialAsm>,
    ) {
        if left == 0 {
            if parity == target {
                out.push(PartialAsm {
                    spec: spec.clone(),
                    entries: acc.clone(),
                });
            }
            return;
        }
        let mut choices = Vec::new();
        for_each_row(spec, parity, |row, p| choices.push((row.to_vec(), p)));
        for (row, p) in choices {
            let len = acc.len();
            acc.extend_from_slice(&row);
            rec(spec, left - 1, p, target, acc, out);
            acc.truncate(len);
        }
    }
    rec(spec, rows, 0, target, &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, bottom: &[usize], top: &[usize]) -> RefinementSpec {
        RefinementSpec::new(n, bottom.to_vec(), top.to_vec()).unwrap()
    }

    #[test]
    fn unrefined_counts_are_totals() {
        for (n, a) in [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)] {
            assert_eq!(count_partial(&spec(n, &[], &[])).unwrap(), BigInt::from(a));
        }
    }

    #[test]
    fn refined_examples() {
        assert_eq!(count_partial(&spec(3, &[], &[2])).unwrap(), 3.into());
        assert_eq!(count_partial(&spec(3, &[1], &[2])).unwrap(), 1.into());
        assert_eq!(count_partial(&spec(1, &[], &[1])).unwrap(), 1.into());
    }

    #[test]
    fn generator_matches_counter() {
        for n in 1..=4 {
            for bottom in [vec![], vec![1], vec![2]] {
                for top in [vec![], vec![1], vec![n]] {
                    if bottom.len() + top.len() > n || bottom.iter().any(|&x| x > n) {
                        continue;
                    }
                    let s = spec(n, &bottom, &top);
                    let g = generate_partial(&s).unwrap();
                    assert_eq!(BigInt::from(g.len()), count_partial(&s).unwrap(), "{s:?}");
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(RefinementSpec::new(3, vec![2, 1], vec![]).is_err());
        assert!(RefinementSpec::new(3, vec![], vec![4]).is_err());
        assert!(RefinementSpec::new(2, vec![1, 2], vec![1]).is_err());
    }
}
