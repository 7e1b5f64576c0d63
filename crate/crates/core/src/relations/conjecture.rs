//! A linear system in the top-`d`-rows counts `x(i_1, ..., i_d)`, indexed by
//! all of `[1, n]^d`, and an exact rank computation for it.
//!
//! Four families of equations:
//! 1. reversal transfer: `x(i) = sum_{j >= i} (-1)^{dn + |j|} x(j_d, ..., j_1)
//!    prod_r binom(2n - i_r - d, j_r - i_r)`;
//! 2. for each adjacent pair `(l, l+1)` the six-term swap relation
//!    `x(i) - x(.., i_{l+1}+1, ..) + x(.., i_l+1, i_{l+1}+1, ..) + x(.., i_{l+1}, i_l, ..)
//!     - x(.., i_{l+1}, i_l+1, ..) + x(.., i_{l+1}+1, i_l+1, ..) = 0`;
//! 3. reflection `x(i) = x(n+1-i_d, ..., n+1-i_1)` for increasing `i`;
//! 4. reduction `x(i_1, ..., i_{d-1}, n) = A(n-1; -; i_1, ..., i_{d-1})` for
//!    increasing `i` in `[1, n-1]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Checker, Computed};
use crate::coeffs::COEFF_HARD_MAX_CD;
use crate::enumerate::{asm_total, increasing_tuples, CountTable};
use crate::error::{usage, Result};
use crate::exactmath::binom;
use crate::shiftops::SYMBOLIC_HARD_MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationFamily {
    ReversalTransfer,
    Swap,
    Reflection,
    Reduction,
}

impl EquationFamily {
    pub const ALL: [EquationFamily; 4] = [
        EquationFamily::ReversalTransfer,
        EquationFamily::Swap,
        EquationFamily::Reflection,
        EquationFamily::Reduction,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn slug(self) -> &'static str {
        match self {
            EquationFamily::ReversalTransfer => "reversal-transfer",
            EquationFamily::Swap => "swap",
            EquationFamily::Reflection => "reflection",
            EquationFamily::Reduction => "reduction",
        }
    }
}

impl fmt::Display for EquationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Treatment of swap equations that mention an index `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    /// Unknowns outside `[1, n]^d` are 0; the equation is kept.
    Zero,
    /// The equation is dropped.
    Restrict,
}

impl fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryMode::Zero => "zero",
            BoundaryMode::Restrict => "restrict",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemRow {
    pub family: EquationFamily,
    /// The index tuple the equation was generated from (prefixed by `l` for
    /// swap equations).
    pub origin: Vec<i64>,
    /// Integer coefficients by column; no zero entries.
    pub coeffs: BTreeMap<usize, BigInt>,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub n: usize,
    pub d: usize,
    pub mode: BoundaryMode,
    /// Column `k` holds the unknown `x(variables[k])`; lexicographic order.
    pub variables: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    pub rows: Vec<SystemRow>,
}

impl LinearSystem {
    fn new(n: usize, d: usize, mode: BoundaryMode) -> Self {
        let variables = cube(d, n as i64);
        let index = variables
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        LinearSystem {
            n,
            d,
            mode,
            variables,
            index,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, index: &[i64]) -> Option<usize> {
        self.index.get(index).copied()
    }

    pub fn unknowns(&self) -> usize {
        self.variables.len()
    }

    pub fn rows_by_family(&self) -> BTreeMap<EquationFamily, usize> {
        let mut out: BTreeMap<EquationFamily, usize> =
            EquationFamily::ALL.iter().map(|&f| (f, 0)).collect();
        for r in &self.rows {
            *out.entry(r.family).or_default() += 1;
        }
        out
    }

    fn push(
        &mut self,
        family: EquationFamily,
        origin: Vec<i64>,
        terms: Vec<(Vec<i64>, BigInt)>,
        rhs: BigInt,
    ) {
        let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (idx, c) in terms {
            let Some(col) = self.column(&idx) else {
                continue;
            };
            *coeffs.entry(col).or_insert_with(BigInt::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push(SystemRow {
            family,
            origin,
            coeffs,
            rhs,
        });
    }

    /// The first row that `value` does not satisfy, with its two sides.
    pub fn first_violation(
        &self,
        value: impl Fn(&[i64]) -> BigInt,
    ) -> Option<(usize, BigInt, BigInt)> {
        let values: Vec<BigInt> = self.variables.iter().map(|v| value(v)).collect();
        self.rows.iter().enumerate().find_map(|(k, r)| {
            let lhs: BigInt = r.coeffs.iter().map(|(&c, a)| a * &values[c]).sum();
            (lhs != r.rhs).then(|| (k, lhs, r.rhs.clone()))
        })
    }

    /// Rank of the coefficient matrix by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let cols = self.unknowns();
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); cols];
                for (&c, a) in &r.coeffs {
                    row[c] = a.clone();
                }
                row
            })
            .collect();
        bareiss_rank(&mut m, cols)
    }

    /// Dimension of the solution space of the homogeneous part.
    pub fn nullity(&self) -> usize {
        self.unknowns() - self.rank()
    }
}

/// Rank of a dense integer matrix, destroying it. Every division is exact.
pub(crate) fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..cols {
                let v = (&pivot * &row[c] - &factor * &pivot_row[c]) / &prev;
                row[c] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// All tuples in `[1, n]^len`, lexicographic.
fn cube(len: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn neg_if(odd: bool, v: BigInt) -> BigInt {
    if odd {
        -v
    } else {
        v
    }
}

/// The system for `(n, d)`. `prev` holds `A(n-1; -; i_1, ..., i_{d-1})` on
/// increasing tuples; for `d = 1` it may be empty, and `A_{n-1}` is used.
pub fn build_conjecture_system(
    n: usize,
    d: usize,
    prev: &CountTable,
    mode: BoundaryMode,
) -> Result<LinearSystem> {
    if d == 0 || n < d {
        return usage("need n >= d >= 1");
    }
    if d > 1 && prev.arity() != d - 1 {
        return usage(format!("previous table must have {} indices", d - 1));
    }
    let ni = n as i64;
    let di = d as i64;
    let mut sys = LinearSystem::new(n, d, mode);
    let one = BigInt::one();

    for i in sys.variables.clone() {
        let mut terms = vec![(i.clone(), one.clone())];
        let lower = i.clone();
        let mut js = vec![Vec::new()];
        for &lo in &lower {
            js = js
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (lo..=ni).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        for j in js {
            let mut c = BigInt::one();
            for (jr, ir) in j.iter().zip(&i) {
                c *= binom(2 * ni - ir - di, jr - ir);
            }
            if c.is_zero() {
                continue;
            }
            let odd = (di * ni + j.iter().sum::<i64>()) % 2 != 0;
            let reversed: Vec<i64> = j.iter().rev().copied().collect();
            terms.push((reversed, -neg_if(odd, c)));
        }
        sys.push(EquationFamily::ReversalTransfer, i, terms, BigInt::zero());
    }

    for l in 0..d.saturating_sub(1) {
        for i in sys.variables.clone() {
            let (a, b) = (i[l], i[l + 1]);
            let with = |x: i64, y: i64| {
                let mut v = i.clone();
                v[l] = x;
                v[l + 1] = y;
                v
            };
            let terms = vec![
                (i.clone(), one.clone()),
                (with(a, b + 1), -&one),
                (with(a + 1, b + 1), one.clone()),
                (with(b, a), one.clone()),
                (with(b, a + 1), -&one),
                (with(b + 1, a + 1), one.clone()),
            ];
            let out_of_range = terms.iter().any(|(v, _)| v.iter().any(|&x| x > ni));
            if out_of_range && mode == BoundaryMode::Restrict {
                continue;
            }
            let mut origin = vec![l as i64 + 1];
            origin.extend(&i);
            sys.push(EquationFamily::Swap, origin, terms, BigInt::zero());
        }
    }

    for i in increasing_tuples(d, 1, ni) {
        let r: Vec<i64> = i.iter().rev().map(|&x| ni + 1 - x).collect();
        if r == i {
            continue;
        }
        sys.push(
            EquationFamily::Reflection,
            i.clone(),
            vec![(i, one.clone()), (r, -&one)],
            BigInt::zero(),
        );
    }

    for head in increasing_tuples(d - 1, 1, ni - 1) {
        let rhs = if d == 1 {
            prev.entries
                .get(&Vec::new())
                .cloned()
                .unwrap_or_else(|| asm_total(n - 1))
        } else {
            prev.get(&head)
        };
        let mut idx = head.clone();
        idx.push(ni);
        sys.push(
            EquationFamily::Reduction,
            idx.clone(),
            vec![(idx, one.clone())],
            rhs,
        );
    }
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub d: usize,
    pub mode: BoundaryMode,
    pub unknowns: usize,
    pub rows_by_family: BTreeMap<String, usize>,
    pub rank: usize,
    /// Dimension of the solution space (of the homogeneous part).
    pub solution_space_dimension: usize,
    pub known_values_satisfy: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub family: EquationFamily,
    pub origin: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Builds the system from the coefficient tables, checks that the extended
/// values for `(n, d)` satisfy every row, and reports the rank.
pub fn check_conjecture_uniqueness(
    n: usize,
    d: usize,
    mode: BoundaryMode,
) -> Result<ConjectureReport> {
    Checker::new(&Computed).conjecture_uniqueness(n, d, mode)
}

impl Checker<'_> {
    /// [`check_conjecture_uniqueness`] with tables read from this checker's source.
    pub fn conjecture_uniqueness(
        &self,
        n: usize,
        d: usize,
        mode: BoundaryMode,
    ) -> Result<ConjectureReport> {
        if d == 0 || n < d || n > SYMBOLIC_HARD_MAX || d > COEFF_HARD_MAX_CD {
            return usage(format!(
                "conjecture system needs 1 <= d <= min(n, {COEFF_HARD_MAX_CD}) and n <= {SYMBOLIC_HARD_MAX}"
            ));
        }
        let prev = if d == 1 {
            CountTable::new("A", n - 1, &[])
        } else {
            self.coefficients(n - 1, 0, d - 1)?.to_count_table()
        };
        let sys = build_conjecture_system(n, d, &prev, mode)?;
        let known = self.coefficients(n, 0, d)?;
        let violation = sys
            .first_violation(|idx| known.get_flat(idx))
            .map(|(k, lhs, rhs)| Violation {
                family: sys.rows[k].family,
                origin: sys.rows[k].origin.clone(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        let rank = sys.rank();
        Ok(ConjectureReport {
            n,
            d,
            mode,
            unknowns: sys.unknowns(),
            rows_by_family: sys
                .rows_by_family()
                .into_iter()
                .map(|(f, c)| (f.slug().to_string(), c))
                .collect(),
            rank,
            solution_space_dimension: sys.unknowns() - rank,
            known_values_satisfy: violation.is_none(),
            violation,
        })
    }
}
