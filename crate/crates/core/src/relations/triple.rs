//! Bottom-and-two-top counts against left-top-right counts.
//!
//! `ltr(s, i, t)` counts 1s at `(s, 1)`, `(1, i)` and `(t, n)`; `ttb(s, i, t)`
//! is the extended coefficient `A(n; s; i, t)`.

use num_bigint::BigInt;

use super::{iv, need_enumerable, need_symbolic, Checker};
use crate::enumerate::{CountTable, Family};
use crate::error::Result;
use crate::report::IdentityReport;

/// The six-term combination
/// `ltr(s+1, i, t) + ltr(s+1, i, t+1) + ltr(s, i+1, t) - ltr(s+1, i+1, t)
///  - ltr(s, i, t+1) - ltr(s+1, i-1, t+1)`.
fn six_term(ltr: impl Fn(i64, i64, i64) -> BigInt, s: i64, i: i64, t: i64) -> BigInt {
    ltr(s + 1, i, t) + ltr(s + 1, i, t + 1) + ltr(s, i + 1, t)
        - ltr(s + 1, i + 1, t)
        - ltr(s, i, t + 1)
        - ltr(s + 1, i - 1, t + 1)
}

impl Checker<'_> {
    /// `ttb(s, i, t) = six_term(ltr)` for `s, t` in `[2, n]` and `i` in
    /// `[1, n]` (witness tag 0), and its `t = n` specialization against the
    /// top-bottom table of size `n - 1`: `ttb(s, i, n) = tb_{n-1}(i, s)`
    /// (witness tag 1).
    pub fn main_theorem(&self, n: usize) -> Result<IdentityReport> {
        need_symbolic(n, 3, "bottom/two-top versus left-top-right relation")?;
        let ni = n as i64;
        let ttb = self.coefficients(n, 1, 2)?;
        let ltr = self.refined(n, Family::LeftTopRight)?;
        let tb_prev = self.refined(n - 1, Family::TopBottom)?;
        let mut rep = IdentityReport::new(
            "main-theorem",
            &[("n", ni)],
            format!("s, t in [2, {n}], i in [1, {n}]; extended left side, counted right side"),
        );
        let l = |s: i64, i: i64, t: i64| ltr.get(&[s, i, t]);
        for s in 2..=ni {
            for i in 1..=ni {
                for t in 2..=ni {
                    rep.check(
                        &[0, s, i, t],
                        &ttb.get(&[s], &[i, t]),
                        &six_term(l, s, i, t),
                    );
                }
            }
        }
        for s in 2..=ni {
            for i in 1..=ni {
                rep.check(&[1, s, i], &ttb.get(&[s], &[i, ni]), &tb_prev.get(&[i, s]));
            }
        }
        Ok(rep)
    }

    /// The boundary rows of `ltr` in terms of size `n - 1` tables, witness
    /// tag first:
    /// 0. `ltr(1, i, t) = [t != 1][i = 1] A_{n-1, t-1}`
    /// 1. `ltr(s, i, 1) = [s != 1][i = n] A_{n-1, s-1}`
    /// 2. `ltr(n, i, t) = [t != n][i != 1] tr_{n-1}(i-1, t)`
    /// 3. `ltr(s, i, n) = [s != n][i != n] tl_{n-1}(i, s)`
    pub fn boundary_values(&self, n: usize) -> Result<IdentityReport> {
        need_enumerable(n, 2, "left-top-right boundary values")?;
        let ni = n as i64;
        let ltr = self.refined(n, Family::LeftTopRight)?;
        let seeds = BoundarySeeds::load(self, n)?;
        let mut rep = IdentityReport::new(
            "boundary-values",
            &[("n", ni)],
            format!("s or t in {{1, {n}}}, all i in [1, {n}]"),
        );
        for a in 1..=ni {
            for i in 1..=ni {
                let cases = [
                    (0, [1, i, a]),
                    (1, [a, i, 1]),
                    (2, [ni, i, a]),
                    (3, [a, i, ni]),
                ];
                for (tag, [s, i, t]) in cases {
                    let want = seeds.value(tag, s, i, t);
                    rep.check(&[tag, s, i, t], &ltr.get(&[s, i, t]), &want);
                }
            }
        }
        Ok(rep)
    }

    /// Rebuilds `ltr` from `ttb` and the boundary values using
    /// `ltr(s, i+1, t) = ttb(s, i, t) - (six_term(ltr) - ltr(s, i+1, t))`,
    /// sweeping `s` and `t` downwards from `n - 1` to 2 and `i` upwards from
    /// 0 with `ltr(s, 0, t) = 0`. The report compares the result with direct
    /// counts (tag 0) and checks that the sweep closes with `ltr(s, n+1, t) = 0`
    /// (tag 1).
    pub fn reconstruct_triple_table(&self, n: usize) -> Result<(CountTable, IdentityReport)> {
        need_enumerable(n, 3, "left-top-right reconstruction")?;
        need_symbolic(n, 3, "left-top-right reconstruction")?;
        let ni = n as i64;
        let ttb = self.coefficients(n, 1, 2)?;
        let seeds = BoundarySeeds::load(self, n)?;
        let fam = Family::LeftTopRight;
        let mut out = CountTable::new(fam.slug(), n, fam.index_names());
        for a in 1..=ni {
            for i in 1..=ni {
                out.set(vec![1, i, a], seeds.value(0, 1, i, a));
                out.set(vec![a, i, 1], seeds.value(1, a, i, 1));
                out.set(vec![ni, i, a], seeds.value(2, ni, i, a));
                out.set(vec![a, i, ni], seeds.value(3, a, i, ni));
            }
        }
        let mut rep = IdentityReport::new(
            "reconstruction",
            &[("n", ni)],
            format!("all (s, i, t) in [1, {n}]^3, boundary rows seeded"),
        );
        rep.note("seeds: rows s = 1, s = n, t = 1, t = n from size n - 1 tables");
        for s in (2..ni).rev() {
            for t in (2..ni).rev() {
                for i in 0..=ni {
                    let l = |a: i64, b: i64, c: i64| out.get(&[a, b, c]);
                    let rest = six_term(l, s, i, t) - out.get(&[s, i + 1, t]);
                    let value = ttb.get(&[s], &[i, t]) - rest;
                    if i < ni {
                        out.set(vec![s, i + 1, t], value);
                    } else {
                        rep.check(&[1, s, t], &value, &BigInt::from(0));
                    }
                }
            }
        }
        let direct = self.refined(n, fam)?;
        for s in 1..=ni {
            for i in 1..=ni {
                for t in 1..=ni {
                    rep.check(&[0, s, i, t], &out.get(&[s, i, t]), &direct.get(&[s, i, t]));
                }
            }
        }
        Ok((out, rep))
    }
}

/// Size `n - 1` tables feeding the boundary rows.
struct BoundarySeeds {
    n: i64,
    prev_top: std::sync::Arc<CountTable>,
    prev_tr: std::sync::Arc<CountTable>,
    prev_tl: std::sync::Arc<CountTable>,
}

impl BoundarySeeds {
    fn load(checker: &Checker<'_>, n: usize) -> Result<Self> {
        Ok(BoundarySeeds {
            n: n as i64,
            prev_top: checker.refined(n - 1, Family::TopRow)?,
            prev_tr: checker.refined(n - 1, Family::TopRight)?,
            prev_tl: checker.refined(n - 1, Family::TopLeft)?,
        })
    }

    fn value(&self, tag: i64, s: i64, i: i64, t: i64) -> BigInt {
        let n = self.n;
        match tag {
            0 => self.prev_top.get(&[t - 1]) * iv(t != 1 && i == 1),
            1 => self.prev_top.get(&[s - 1]) * iv(s != 1 && i == n),
            2 => self.prev_tr.get(&[i - 1, t]) * iv(t != n && i != 1),
            _ => self.prev_tl.get(&[i, s]) * iv(s != n && i != n),
        }
    }
}
