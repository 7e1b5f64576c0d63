//! Alternating sign matrices and their exhaustive generation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::triangle::{interleavings, mt_to_asm, MonotoneTriangle};
use crate::error::{usage, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

/// Whether the non-zero entries alternate starting with `first` and the
/// sequence sums to `sum` (which fixes the last sign).
pub(crate) fn alternates(seq: impl Iterator<Item = i8>, first: i8) -> Option<i8> {
    let mut expect = first;
    let mut sum = 0i8;
    for x in seq {
        if x == 0 {
            continue;
        }
        if x != expect {
            return None;
        }
        sum += x;
        expect = -expect;
    }
    Some(sum)
}

impl Asm {
    /// Validates row/column sums and sign alternation.
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return usage(format!("expected {} entries for n = {n}", n * n));
        }
        let a = Asm { n, entries };
        for i in 0..n {
            if alternates((0..n).map(|j| a.get(i, j)), 1) != Some(1) {
                return usage(format!("row {} is not alternating with sum 1", i + 1));
            }
            if alternates((0..n).map(|j| a.get(j, i)), 1) != Some(1) {
                return usage(format!("column {} is not alternating with sum 1", i + 1));
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// 1-based column of the 1 in a boundary row (first or last).
    pub fn one_in_row(&self, row: usize) -> usize {
        (0..self.n)
            .find(|&j| self.get(row, j) == 1)
            .expect("boundary row has a 1")
            + 1
    }

    /// 1-based row of the 1 in a boundary column (first or last).
    pub fn one_in_col(&self, col: usize) -> usize {
        (0..self.n)
            .find(|&i| self.get(i, col) == 1)
            .expect("boundary column has a 1")
            + 1
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Depth-first stream over complete monotone triangles, yielded as ASMs.
pub struct AsmIter {
    n: usize,
    // rows[r] is the triangle row with n - r entries
    rows: Vec<Vec<i64>>,
    // candidates for rows[r + 1] given rows[r], with the next index to try
    pending: Vec<(Vec<Vec<i64>>, usize)>,
    done: bool,
}

impl Iterator for AsmIter {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        if self.done {
            return None;
        }
        if self.n == 1 {
            self.done = true;
            return Some(Asm {
                n: 1,
                entries: vec![1],
            });
        }
        loop {
            let (cands, idx) = self.pending.last_mut()?;
            if *idx == cands.len() {
                self.pending.pop();
                self.rows.pop();
                if self.pending.is_empty() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let row = cands[*idx].clone();
            *idx += 1;
            if row.len() == 1 {
                let mut rows = self.rows.clone();
                rows.push(row);
                let t = MonotoneTriangle::new(rows).expect("generated triangle is valid");
                return Some(mt_to_asm(&t).expect("generated triangle is complete"));
            }
            self.pending.push((interleavings(&row), 0));
            self.rows.push(row);
        }
    }
}

/// Every `n x n` ASM exactly once, generated through complete monotone
/// triangles.
pub fn enumerate_asms(n: usize) -> AsmIter {
    let bottom: Vec<i64> = (1..=n as i64).collect();
    let pending = if n >= 2 {
        vec![(interleavings(&bottom), 0)]
    } else {
        Vec::new()
    };
    AsmIter {
        n,
        rows: vec![bottom],
        pending,
        done: n == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::triangle::asm_to_mt;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_asms(0).count(), 0);
        let one: Vec<Asm> = enumerate_asms(1).collect();
        assert_eq!(one, vec![Asm::new(1, vec![1]).unwrap()]);
        assert_eq!(enumerate_asms(2).count(), 2);
        assert_eq!(enumerate_asms(3).count(), 7);
        assert_eq!(enumerate_asms(5).count(), 429);
    }

    #[test]
    fn generated_matrices_are_distinct_and_valid() {
        let all: Vec<Asm> = enumerate_asms(4).collect();
        let set: BTreeSet<&Asm> = all.iter().collect();
        assert_eq!(set.len(), 42);
        for a in &all {
            assert!(Asm::new(a.n(), a.entries().to_vec()).is_ok());
        }
    }

    #[test]
    fn round_trip_through_triangles() {
        for n in 1..=5 {
            for a in enumerate_asms(n) {
                let t = asm_to_mt(&a);
                assert!(t.is_complete());
                assert_eq!(mt_to_asm(&t).unwrap(), a);
            }
        }
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        assert!(Asm::new(2, vec![1, 1, 0, 0]).is_err());
        assert!(Asm::new(3, vec![0, 1, 0, 1, 1, -1, 0, -1, 1]).is_err());
        assert!(Asm::new(2, vec![1]).is_err());
    }
}
