//! Binomial transfer between `A(n; s; i)` families with equal `c + d`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{need_symbolic, Checker};
use crate::coeffs::COEFF_HARD_MAX_CD;
use crate::error::{usage, Result};
use crate::exactmath::binom;
use crate::report::IdentityReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Moves `t` bottom positions to the top.
    BottomToTop,
    /// Moves `t` top positions to the bottom.
    TopToBottom,
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

/// All tuples `j` with `lower[r] <= j[r] <= n`.
fn boxes(lower: &[i64], n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &lo in lower {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

impl Checker<'_> {
    /// Bottom to top (`1 <= t <= c`):
    /// `A(n; s_1..s_c; i_1..i_d) = sum A(n; s_1..s_{c-t}; i_1..i_d, j_1..j_t)
    ///  (-1)^{j_1+..+j_t+tn} prod_r binom(2n-c-d-s_{c-r+1}, j_r - s_{c-r+1})`
    /// with `j_r` running over `[s_{c-r+1}, n]`; top to bottom is the mirror
    /// image. Both sides use extended coefficients on all of `[1, n]^{c+d}`.
    pub fn topbottom_transfer(
        &self,
        n: usize,
        c: usize,
        d: usize,
        t: usize,
        direction: Direction,
    ) -> Result<IdentityReport> {
        need_symbolic(n, 1, "top/bottom transfer")?;
        if c + d > n || c + d > COEFF_HARD_MAX_CD {
            return usage(format!(
                "transfer needs c + d <= min(n, {COEFF_HARD_MAX_CD})"
            ));
        }
        let moved_from = match direction {
            Direction::BottomToTop => c,
            Direction::TopToBottom => d,
        };
        if t == 0 || t > moved_from {
            return usage(format!(
                "t must lie in [1, {moved_from}] for this direction"
            ));
        }
        let ni = n as i64;
        let width = 2 * ni - (c + d) as i64;
        let lhs_table = self.coefficients(n, c, d)?;
        let (rc, rd) = match direction {
            Direction::BottomToTop => (c - t, d + t),
            Direction::TopToBottom => (c + t, d - t),
        };
        let rhs_table = self.coefficients(n, rc, rd)?;
        let dir = match direction {
            Direction::BottomToTop => 0,
            Direction::TopToBottom => 1,
        };
        let mut rep = IdentityReport::new(
            "topbottom-transfer",
            &[
                ("n", ni),
                ("c", c as i64),
                ("d", d as i64),
                ("t", t as i64),
                ("direction", dir),
            ],
            format!("all (s; i) in [1, {n}]^{}, extended coefficients", c + d),
        );
        for key in cube(c + d, ni) {
            let (s, i) = key.split_at(c);
            // The positions that are summed against, in summation order.
            let anchors: Vec<i64> = match direction {
                Direction::BottomToTop => (1..=t).map(|r| s[c - r]).collect(),
                Direction::TopToBottom => (1..=t).map(|r| i[d - r]).collect(),
            };
            let mut rhs = BigInt::zero();
            for j in boxes(&anchors, ni) {
                let rkey: Vec<i64> = match direction {
                    Direction::BottomToTop => {
                        s[..c - t].iter().chain(i).chain(&j).copied().collect()
                    }
                    Direction::TopToBottom => {
                        s.iter().chain(&j).chain(&i[..d - t]).copied().collect()
                    }
                };
                let mut term = rhs_table.get_flat(&rkey);
                if term.is_zero() {
                    continue;
                }
                for (jr, ar) in j.iter().zip(&anchors) {
                    term *= binom(width - ar, jr - ar);
                }
                let sign: i64 = j.iter().sum::<i64>() + t as i64 * ni;
                if sign % 2 != 0 {
                    term = -term;
                }
                rhs += term;
            }
            rep.check(&key, &lhs_table.get_flat(&key), &rhs);
        }
        Ok(rep)
    }
}
