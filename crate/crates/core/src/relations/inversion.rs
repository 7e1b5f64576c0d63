//! Inverting the operators `id - E_j E_i^{-1}` and `id - (E_i^{-1} + E_j^{-1})`
//! on matrices with one-sided support, and reconstructing the top-right and
//! top-left tables from them.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{iv, need_enumerable, need_symbolic, prev_total, square, Checker};
use crate::enumerate::{CountTable, Family};
use crate::error::{usage, Result};
use crate::exactmath::binom;
use crate::report::IdentityReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionKind {
    /// `B = (id - E_j E_i^{-1}) A` with `B = 0` for `i <= 0` or `j >= n+1`;
    /// `A_{i,j} = sum_{k >= 0} B_{i-k, j+k}`.
    Diagonal,
    /// `B = (id - E_i^{-1} - E_j^{-1}) A` with `B = 0` for `i <= 0` or `j <= 0`;
    /// `A_{i,j} = sum_{k >= 0} sum_{l=0}^{k} binom(k, l) B_{i-l, j-k+l}`.
    Binomial,
}

/// Index bounds of the nonzero entries of a two-index table.
fn support(b: &CountTable) -> Option<(i64, i64)> {
    let nz = b.iter().filter(|(_, v)| !v.is_zero());
    let mut bounds: Option<(i64, i64)> = None;
    for (k, _) in nz {
        let lo = k[0].min(k[1]);
        let hi = k[0].max(k[1]);
        bounds = Some(match bounds {
            None => (lo, hi),
            Some((a, b)) => (a.min(lo), b.max(hi)),
        });
    }
    bounds
}

/// The unique solution `A` described by `kind`, tabulated on the square
/// `[lo - 2, hi + 2]^2` where `[lo, hi]` bounds both `[0, n+1]` and the
/// support of `B`.
///
/// The infinite sums are finite: for `Diagonal` only `k <= i - 1` can meet the
/// support, for `Binomial` only `k <= i + j - 2`.
pub fn invert_elegant(kind: InversionKind, b: &CountTable, n: usize) -> Result<CountTable> {
    if b.arity() != 2 {
        return usage("inversion needs a two-index table");
    }
    let ni = n as i64;
    for (k, v) in b.iter() {
        if v.is_zero() {
            continue;
        }
        let (i, j) = (k[0], k[1]);
        let outside = match kind {
            InversionKind::Diagonal => i <= 0 || j > ni,
            InversionKind::Binomial => i <= 0 || j <= 0,
        };
        if outside {
            return usage(format!(
                "support condition violated: B({i}, {j}) = {v} must vanish"
            ));
        }
    }
    let (lo, hi) = match support(b) {
        Some((a, z)) => (a.min(0), z.max(ni + 1)),
        None => (0, ni + 1),
    };
    let (lo, hi) = (lo - 2, hi + 2);
    let mut a = CountTable::new(format!("inverse({})", b.family), n, &["i", "j"]);
    for (i, j) in square(lo, hi) {
        let mut v = BigInt::zero();
        match kind {
            InversionKind::Diagonal => {
                for k in 0..i.max(0) {
                    v += b.get(&[i - k, j + k]);
                }
            }
            InversionKind::Binomial => {
                for k in 0..=(i + j - 2).max(-1) {
                    for l in 0..=k {
                        let x = b.get(&[i - l, j - k + l]);
                        if !x.is_zero() {
                            v += binom(k, l) * x;
                        }
                    }
                }
            }
        }
        a.set(vec![i, j], v);
    }
    Ok(a)
}

/// Checks that `a` solves the defining relation for `b` on its stored
/// square (away from the lower edge, where shifted reads leave the window)
/// and satisfies the zero boundary. Witness tags: 0 relation, 1 boundary.
fn check_solution(
    rep: &mut IdentityReport,
    kind: InversionKind,
    a: &CountTable,
    b: &CountTable,
    n: i64,
    tag0: i64,
) {
    let keys: Vec<Vec<i64>> = a.iter().map(|(k, _)| k.clone()).collect();
    let lo = keys.iter().map(|k| k[0]).min().unwrap_or(0);
    let hi = keys.iter().map(|k| k[0]).max().unwrap_or(0);
    for (i, j) in square(lo + 1, hi - 1) {
        let applied = match kind {
            InversionKind::Diagonal => a.get(&[i, j]) - a.get(&[i - 1, j + 1]),
            InversionKind::Binomial => a.get(&[i, j]) - a.get(&[i - 1, j]) - a.get(&[i, j - 1]),
        };
        rep.check(&[tag0, i, j], &applied, &b.get(&[i, j]));
    }
    let zero = BigInt::zero();
    for x in lo..=hi {
        let cells = match kind {
            InversionKind::Diagonal => [[0, x], [x, n + 1]],
            InversionKind::Binomial => [[0, x], [x, 0]],
        };
        for c in cells {
            rep.check(&[tag0 + 1, c[0], c[1]], &a.get(&c), &zero);
        }
    }
}

impl Checker<'_> {
    /// Both inversions applied to size-`n` data:
    ///
    /// - `Diagonal` on `B = two + (-[i=n-1][j=1] + [i=n][j=1] - [i=n+1][j=0]) A_{n-1}`
    ///   (extended `two`) must give the top-right table, which must also equal
    ///   `sum_k two(i-k, j+k) + (-[i+j=n][j<=1] + [i=n][j=1]) A_{n-1}` and
    ///   `-sum_k two(i+1+k, j-1-k) + ([i+j=n][j>=2] + [i=n][j=1]) A_{n-1}`.
    /// - `Binomial` on `B = -tb(i-1, j-1) + ([i=2]-[i=1])([j=2]-[j=1]) A_{n-1}`
    ///   must give the top-left table, which must also equal
    ///   `-sum binom(k, l) tb(i-l-1, j-k+l-1) + A_{n-1} binom(i+j-4, i-2)[i>=2][j>=2]
    ///   + A_{n-1} [i=1][j=1]`.
    ///
    /// Witness tags: 0/1 relation/boundary and 2 table match for `Diagonal`,
    /// 3, 4 closed forms; 10/11 and 12 for `Binomial`, 13 closed form.
    pub fn elegant_inversions(&self, n: usize) -> Result<IdentityReport> {
        need_enumerable(n, 2, "inversions")?;
        need_symbolic(n, 2, "inversions")?;
        let ni = n as i64;
        let a_prev = prev_total(n);
        let two = self.coefficients(n, 0, 2)?;
        let tr = self.refined(n, Family::TopRight)?;
        let tl = self.refined(n, Family::TopLeft)?;
        let tb = self.refined(n, Family::TopBottom)?;
        let mut rep = IdentityReport::new(
            "elegant-inversions",
            &[("n", ni)],
            format!(
                "solutions on [-2, {}]^2, table matches on [-1, {}]^2",
                ni + 3,
                ni + 2
            ),
        );
        rep.note("diagonal sums truncated at k <= i - 1, binomial sums at k <= i + j - 2");

        let mut b1 = CountTable::new("diagonal-source", n, &["i", "j"]);
        for (i, j) in square(-1, ni + 2) {
            let corr =
                -iv(i == ni - 1 && j == 1) + iv(i == ni && j == 1) - iv(i == ni + 1 && j == 0);
            let v = two.get_flat(&[i, j]) + &a_prev * corr;
            if !v.is_zero() {
                b1.set(vec![i, j], v);
            }
        }
        let a1 = invert_elegant(InversionKind::Diagonal, &b1, n)?;
        check_solution(&mut rep, InversionKind::Diagonal, &a1, &b1, ni, 0);
        let w = |i: i64, j: i64| two.get_flat(&[i, j]);
        for (i, j) in square(-1, ni + 2) {
            let want = tr.get(&[i, j]);
            rep.check(&[2, i, j], &a1.get(&[i, j]), &want);
            let mut first: BigInt = (0..=(i - 1).max(-1)).map(|k| w(i - k, j + k)).sum();
            first += &a_prev * (-iv(i + j == ni && j <= 1) + iv(i == ni && j == 1));
            rep.check(&[3, i, j], &first, &want);
            let mut second: BigInt = -(0..=(j - 2).max(-1))
                .map(|k| w(i + 1 + k, j - 1 - k))
                .sum::<BigInt>();
            second += &a_prev * (iv(i + j == ni && j >= 2) + iv(i == ni && j == 1));
            rep.check(&[4, i, j], &second, &want);
        }

        let mut b2 = CountTable::new("binomial-source", n, &["i", "j"]);
        for (i, j) in square(-1, ni + 2) {
            let corr = (iv(i == 2) - iv(i == 1)) * (iv(j == 2) - iv(j == 1));
            let v = -tb.get(&[i - 1, j - 1]) + &a_prev * corr;
            if !v.is_zero() {
                b2.set(vec![i, j], v);
            }
        }
        let a2 = invert_elegant(InversionKind::Binomial, &b2, n)?;
        check_solution(&mut rep, InversionKind::Binomial, &a2, &b2, ni, 10);
        for (i, j) in square(-1, ni + 2) {
            let want = tl.get(&[i, j]);
            rep.check(&[12, i, j], &a2.get(&[i, j]), &want);
            let mut closed = BigInt::zero();
            for k in 0..=(i + j - 2).max(-1) {
                for l in 0..=k {
                    closed -= binom(k, l) * tb.get(&[i - l - 1, j - k + l - 1]);
                }
            }
            closed += &a_prev * binom(i + j - 4, i - 2) * iv(i >= 2 && j >= 2);
            closed += &a_prev * iv(i == 1 && j == 1);
            rep.check(&[13, i, j], &closed, &want);
        }
        Ok(rep)
    }
}
