//! Linear relations between refined ASM counts, checked cell by cell.
//!
//! Every table is a total function on integer indices that reads 0 outside
//! the stored range. Two conventions exist for families indexed by top-row
//! positions: the combinatorial one (counts of actual matrices, zero unless
//! the positions increase) and the extended one (binomial-basis coefficients,
//! defined on all of `[1, n]^d`). Each checker states which it reads.
//!
//! Checkers obtain tables through a [`TableSource`], so callers can supply
//! cached tables; the free functions use [`Computed`].

mod conjecture;
mod doubly;
mod inversion;
mod oracle;
#[cfg(test)]
mod tests;
mod transfer;
mod triple;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffs::{extended_table, CoefficientTable, COEFF_MAX_CD};
use crate::enumerate::{
    asm_total, refined_table, CountTable, Family, ENUMERATION_HARD_MAX, ENUMERATION_MAX,
};
use crate::error::{usage, Error, Result};
use crate::report::IdentityReport;
use crate::shiftops::{SYMBOLIC_HARD_MAX, SYMBOLIC_MAX};

pub use conjecture::{
    build_conjecture_system, check_conjecture_uniqueness, BoundaryMode, ConjectureReport,
    EquationFamily, LinearSystem, SystemRow,
};
pub use inversion::{invert_elegant, InversionKind};
pub use transfer::Direction;

/// Where checkers read their tables from.
pub trait TableSource: Sync {
    /// Direct-count table of a refined family.
    fn refined(&self, n: usize, family: Family) -> Result<Arc<CountTable>>;
    /// Binomial-basis coefficients `B(n; s; i)` on all of `[1, n]^{c+d}`.
    fn coefficients(&self, n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>>;
}

/// Computes tables on demand, memoized for the life of the process.
#[derive(Clone, Copy, Debug, Default)]
pub struct Computed;

impl TableSource for Computed {
    fn refined(&self, n: usize, family: Family) -> Result<Arc<CountTable>> {
        refined_table(n, family)
    }

    fn coefficients(&self, n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>> {
        extended_table(n, c, d)
    }
}

/// Runs identity checks against one table source.
#[derive(Clone, Copy)]
pub struct Checker<'a> {
    src: &'a dyn TableSource,
}

impl<'a> Checker<'a> {
    pub fn new(src: &'a dyn TableSource) -> Self {
        Checker { src }
    }

    /// Combinatorial table of size `n`; sizes below 1 give an empty table.
    fn refined(&self, n: usize, family: Family) -> Result<Arc<CountTable>> {
        if n == 0 {
            return Ok(Arc::new(CountTable::new(
                family.slug(),
                0,
                family.index_names(),
            )));
        }
        self.src.refined(n, family)
    }

    fn coefficients(&self, n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>> {
        self.src.coefficients(n, c, d)
    }
}

fn iv(b: bool) -> i64 {
    i64::from(b)
}

/// `A_{n-1}`, with `A_0 = 1`.
fn prev_total(n: usize) -> BigInt {
    asm_total(n.saturating_sub(1))
}

fn need_enumerable(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || n > ENUMERATION_HARD_MAX {
        return usage(format!(
            "{what} needs {min} <= n <= {ENUMERATION_HARD_MAX}, got {n}"
        ));
    }
    Ok(())
}

fn need_symbolic(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || n > SYMBOLIC_HARD_MAX {
        return usage(format!(
            "{what} needs {min} <= n <= {SYMBOLIC_HARD_MAX}, got {n}"
        ));
    }
    Ok(())
}

/// All points of `[lo, hi]^2`, first coordinate slowest.
fn square(lo: i64, hi: i64) -> impl Iterator<Item = (i64, i64)> {
    (lo..=hi).flat_map(move |i| (lo..=hi).map(move |j| (i, j)))
}

/// The identities the crate can check, by command-line slug.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    RefinedBinomial,
    Stroganov,
    KarklinskyRomik,
    TwoTopBinomial,
    TopBottomTransfer,
    MainTheorem,
    BoundaryValues,
    Reconstruction,
    DoublyIlse,
    ElegantInversions,
    Antidiagonal,
    CombinedRotation,
    Decomposition,
    TripleOracle,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::RefinedBinomial,
        Identity::Stroganov,
        Identity::KarklinskyRomik,
        Identity::TwoTopBinomial,
        Identity::TopBottomTransfer,
        Identity::MainTheorem,
        Identity::BoundaryValues,
        Identity::Reconstruction,
        Identity::DoublyIlse,
        Identity::ElegantInversions,
        Identity::Antidiagonal,
        Identity::CombinedRotation,
        Identity::Decomposition,
        Identity::TripleOracle,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Identity::RefinedBinomial => "refined-binomial",
            Identity::Stroganov => "stroganov",
            Identity::KarklinskyRomik => "karklinsky-romik",
            Identity::TwoTopBinomial => "two-top-binomial",
            Identity::TopBottomTransfer => "topbottom-transfer",
            Identity::MainTheorem => "main-theorem",
            Identity::BoundaryValues => "boundary-values",
            Identity::Reconstruction => "reconstruction",
            Identity::DoublyIlse => "doubly-ilse",
            Identity::ElegantInversions => "elegant-inversions",
            Identity::Antidiagonal => "antidiagonal",
            Identity::CombinedRotation => "combined-rotation",
            Identity::Decomposition => "decomposition",
            Identity::TripleOracle => "triple-oracle",
        }
    }

    /// Sizes for which the check is defined and within the documented
    /// practical bounds.
    pub fn n_range(self) -> (usize, usize) {
        let (lo, hi, _) = self.bounds();
        (lo, hi)
    }

    /// Largest size [`Identity::run`] accepts.
    pub fn hard_n_max(self) -> usize {
        self.bounds().2
    }

    /// Smallest size, practical upper bound and hard upper bound.
    fn bounds(self) -> (usize, usize, usize) {
        const ENUM: (usize, usize) = (ENUMERATION_MAX, ENUMERATION_HARD_MAX);
        const SYM: (usize, usize) = (SYMBOLIC_MAX, SYMBOLIC_HARD_MAX);
        let (lo, (hi, hard)) = match self {
            Identity::RefinedBinomial | Identity::Stroganov => (1, ENUM),
            Identity::KarklinskyRomik | Identity::TwoTopBinomial => (2, ENUM),
            Identity::BoundaryValues => (2, ENUM),
            Identity::Decomposition => (1, ENUM),
            Identity::TopBottomTransfer | Identity::TripleOracle => (1, SYM),
            Identity::MainTheorem | Identity::Reconstruction => (3, SYM),
            Identity::DoublyIlse
            | Identity::Antidiagonal
            | Identity::CombinedRotation
            | Identity::ElegantInversions => (2, SYM),
        };
        (lo, hi, hard)
    }

    /// Runs the identity at size `n`, folding all parameter choices into one
    /// report. Sizes above [`Identity::n_range`] up to the hard limits are
    /// attempted; callers decide whether to allow them.
    pub fn run(self, checker: Checker<'_>, n: usize) -> Result<IdentityReport> {
        let (lo, _, hard) = self.bounds();
        if n < lo || n > hard {
            return usage(format!(
                "{} needs {lo} <= n <= {hard}, got {n}",
                self.slug()
            ));
        }
        match self {
            Identity::RefinedBinomial => checker.refined_binomial(n),
            Identity::Stroganov => checker.stroganov(n),
            Identity::KarklinskyRomik => checker.karklinsky_romik(n),
            Identity::TwoTopBinomial => checker.two_top_binomial(n),
            Identity::TopBottomTransfer => {
                let mut rep = IdentityReport::new(
                    self.slug(),
                    &[("n", n as i64)],
                    format!(
                        "all c + d <= {}, all t, both directions",
                        COEFF_MAX_CD.min(n)
                    ),
                );
                for total in 1..=COEFF_MAX_CD.min(n) {
                    for c in 0..=total {
                        let d = total - c;
                        for t in 1..=c {
                            rep.absorb(&checker.topbottom_transfer(
                                n,
                                c,
                                d,
                                t,
                                Direction::BottomToTop,
                            )?);
                        }
                        for t in 1..=d {
                            rep.absorb(&checker.topbottom_transfer(
                                n,
                                c,
                                d,
                                t,
                                Direction::TopToBottom,
                            )?);
                        }
                    }
                }
                Ok(rep)
            }
            Identity::MainTheorem => checker.main_theorem(n),
            Identity::BoundaryValues => checker.boundary_values(n),
            Identity::Reconstruction => checker.reconstruct_triple_table(n).map(|(_, r)| r),
            Identity::DoublyIlse => checker.doubly_ilse(n),
            Identity::ElegantInversions => checker.elegant_inversions(n),
            Identity::Antidiagonal => checker.antidiagonal(n),
            Identity::CombinedRotation => checker.combined_rotation(n),
            Identity::Decomposition => {
                let mut rep = IdentityReport::new(
                    self.slug(),
                    &[("n", n as i64)],
                    "(c, d) in {(1, 1), (1, 2), (2, 2)} with c + d <= n",
                );
                for (c, d) in [(1, 1), (1, 2), (2, 2)] {
                    if c + d <= n {
                        rep.absorb(&oracle::check_decomposition(n, c, d)?);
                    }
                }
                Ok(rep)
            }
            Identity::TripleOracle => oracle::check_triple_oracle(n),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|x| x.slug() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Identity::ALL.iter().map(|x| x.slug()).collect();
                Error::Usage(format!(
                    "unknown identity '{s}'; known: {}",
                    names.join(", ")
                ))
            })
    }
}

pub use oracle::{check_decomposition, check_triple_oracle};

pub fn check_refined_binomial(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).refined_binomial(n)
}

pub fn check_stroganov(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).stroganov(n)
}

pub fn check_karklinsky_romik(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).karklinsky_romik(n)
}

pub fn check_two_top_binomial(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).two_top_binomial(n)
}

pub fn check_topbottom_transfer(
    n: usize,
    c: usize,
    d: usize,
    t: usize,
    direction: Direction,
) -> Result<IdentityReport> {
    Checker::new(&Computed).topbottom_transfer(n, c, d, t, direction)
}

pub fn check_main_theorem(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).main_theorem(n)
}

pub fn check_boundary_values(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).boundary_values(n)
}

pub fn reconstruct_triple_table(n: usize) -> Result<(CountTable, IdentityReport)> {
    Checker::new(&Computed).reconstruct_triple_table(n)
}

pub fn check_doubly_ilse(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).doubly_ilse(n)
}

pub fn check_elegant_inversions(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).elegant_inversions(n)
}

pub fn check_antidiagonal(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).antidiagonal(n)
}

pub fn check_combined_rotation(n: usize) -> Result<IdentityReport> {
    Checker::new(&Computed).combined_rotation(n)
}
