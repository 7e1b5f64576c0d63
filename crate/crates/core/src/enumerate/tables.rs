//! Refined counts tabulated by direct counting over all ASMs of a size.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::asm::{enumerate_asms, Asm};
use crate::error::{usage, Error, Result};

/// Documented practical bound for direct enumeration.
pub const ENUMERATION_MAX: usize = 7;
/// Largest size the census will attempt at all.
pub const ENUMERATION_HARD_MAX: usize = 8;

/// A map from integer index tuples to exact counts; every index not stored
/// reads as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: String,
    pub n: usize,
    pub index_names: Vec<String>,
    pub entries: BTreeMap<Vec<i64>, BigInt>,
}

impl CountTable {
    pub fn new(family: impl Into<String>, n: usize, index_names: &[&str]) -> Self {
        CountTable {
            family: family.into(),
            n,
            index_names: index_names.iter().map(|s| s.to_string()).collect(),
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.index_names.len()
    }

    pub fn get(&self, index: &[i64]) -> BigInt {
        self.entries
            .get(index)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Stores a value; zeros are kept so that the table records its range.
    pub fn set(&mut self, index: Vec<i64>, value: BigInt) {
        debug_assert_eq!(index.len(), self.arity());
        self.entries.insert(index, value);
    }

    pub fn add(&mut self, index: Vec<i64>, value: &BigInt) {
        *self.entries.entry(index).or_insert_with(BigInt::zero) += value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    index: Vec<i64>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    family: String,
    n: usize,
    index_names: Vec<String>,
    entries: Vec<EntryRepr>,
}

impl Serialize for CountTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            family: self.family.clone(),
            n: self.n,
            index_names: self.index_names.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryRepr {
                    index: k.clone(),
                    value: v.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CountTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for e in repr.entries {
            if e.index.len() != repr.index_names.len() {
                return Err(D::Error::custom("index arity does not match index_names"));
            }
            let v = BigInt::from_str(&e.value).map_err(D::Error::custom)?;
            entries.insert(e.index, v);
        }
        Ok(CountTable {
            family: repr.family,
            n: repr.n,
            index_names: repr.index_names,
            entries,
        })
    }
}

/// The refined families available by direct counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A_n`.
    Total,
    /// `A_{n,k}`: the 1 of the top row in column `k`.
    TopRow,
    /// 1s at `(1, i)` and `(n, j)`.
    TopBottom,
    /// 1s at `(1, i)` and `(j, 1)`.
    TopLeft,
    /// 1s at `(1, i)` and `(j, n)`.
    TopRight,
    /// Top two rows reaching the columns `i < j`.
    TwoTop,
    /// Top three rows reaching the columns `i_1 < i_2 < i_3`.
    ThreeTop,
    /// Bottom row at `s`, top two rows reaching `i < t`.
    TwoTopOneBottom,
    /// 1s at `(s, 1)`, `(1, i)` and `(t, n)`.
    LeftTopRight,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Total,
        Family::TopRow,
        Family::TopBottom,
        Family::TopLeft,
        Family::TopRight,
        Family::TwoTop,
        Family::ThreeTop,
        Family::TwoTopOneBottom,
        Family::LeftTopRight,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Family::Total => "A",
            Family::TopRow => "A_nk",
            Family::TopBottom => "top-bottom",
            Family::TopLeft => "top-left",
            Family::TopRight => "top-right",
            Family::TwoTop => "two-top",
            Family::ThreeTop => "three-top",
            Family::TwoTopOneBottom => "two-top-one-bottom",
            Family::LeftTopRight => "left-top-right",
        }
    }

    pub fn index_names(self) -> &'static [&'static str] {
        match self {
            Family::Total => &[],
            Family::TopRow => &["k"],
            Family::TopBottom | Family::TopLeft | Family::TopRight | Family::TwoTop => &["i", "j"],
            Family::ThreeTop => &["i1", "i2", "i3"],
            Family::TwoTopOneBottom | Family::LeftTopRight => &["s", "i", "t"],
        }
    }

    /// Rows removed from the bottom and top when the family is viewed as
    /// `A(n; s; i)`, if it is one of those.
    pub fn bottom_top(self) -> Option<(usize, usize)> {
        match self {
            Family::Total => Some((0, 0)),
            Family::TopRow => Some((0, 1)),
            Family::TopBottom => Some((1, 1)),
            Family::TwoTop => Some((0, 2)),
            Family::ThreeTop => Some((0, 3)),
            Family::TwoTopOneBottom => Some((1, 2)),
            _ => None,
        }
    }

    /// Smallest `n` for which the family is non-trivially defined.
    pub fn min_n(self) -> usize {
        match self {
            Family::Total | Family::TopRow => 1,
            Family::TopBottom | Family::TopLeft | Family::TopRight | Family::TwoTop => 2,
            Family::ThreeTop | Family::TwoTopOneBottom | Family::LeftTopRight => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.slug() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.slug()).collect();
                Error::Usage(format!("unknown family '{s}'; known: {}", names.join(", ")))
            })
    }
}

/// Top set of an ASM after `d` rows: columns with partial column sum 1.
fn top_set(a: &Asm, d: usize) -> Vec<i64> {
    let n = a.n();
    (0..n)
        .filter(|&j| (0..d).map(|i| a.get(i, j)).sum::<i8>() == 1)
        .map(|j| j as i64 + 1)
        .collect()
}

fn bottom_set(a: &Asm, c: usize) -> Vec<i64> {
    let n = a.n();
    (0..n)
        .filter(|&j| (n - c..n).map(|i| a.get(i, j)).sum::<i8>() == 1)
        .map(|j| j as i64 + 1)
        .collect()
}

/// `A(n; S; I)` for all `(S, I)` by counting distinct middle matrices of the
/// ASMs with bottom set `S` and top set `I`. Keys are `S` followed by `I`.
pub fn partial_census(asms: &[Asm], n: usize, c: usize, d: usize) -> BTreeMap<Vec<i64>, BigInt> {
    let mut middles: HashMap<Vec<i64>, HashSet<&[i8]>> = HashMap::new();
    for a in asms {
        let mut key = bottom_set(a, c);
        key.extend(top_set(a, d));
        let mid = &a.entries()[d * n..(n - c) * n];
        middles.entry(key).or_default().insert(mid);
    }
    middles
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v.len())))
        .collect()
}

fn build_table(asms: &[Asm], n: usize, family: Family) -> CountTable {
    let mut t = CountTable::new(family.slug(), n, family.index_names());
    let one = BigInt::one();
    if let Some((c, d)) = family.bottom_top() {
        if c + d <= n {
            for (mut k, v) in partial_census(asms, n, c, d) {
                if family == Family::TopBottom {
                    // census keys put the bottom position first
                    k.swap(0, 1);
                }
                t.set(k, v);
            }
        }
        return t;
    }
    for a in asms {
        let top = a.one_in_row(0) as i64;
        let idx = match family {
            Family::TopLeft => vec![top, a.one_in_col(0) as i64],
            Family::TopRight => vec![top, a.one_in_col(n - 1) as i64],
            Family::LeftTopRight => vec![a.one_in_col(0) as i64, top, a.one_in_col(n - 1) as i64],
            _ => unreachable!("handled above"),
        };
        t.add(idx, &one);
    }
    t
}

type Census = HashMap<Family, Arc<CountTable>>;

static ASMS: OnceLock<Mutex<HashMap<usize, Arc<Vec<Asm>>>>> = OnceLock::new();
static TABLES: OnceLock<Mutex<HashMap<usize, Census>>> = OnceLock::new();

/// All ASMs of size `n`, cached.
pub fn all_asms(n: usize) -> Arc<Vec<Asm>> {
    let map = ASMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = Arc::new(enumerate_asms(n).collect::<Vec<_>>());
    map.lock().unwrap().entry(n).or_insert(v).clone()
}

/// The complete table of a refined family for size `n`, by direct counting.
pub fn refined_table(n: usize, family: Family) -> Result<Arc<CountTable>> {
    if n == 0 {
        return usage("n must be positive");
    }
    if n > ENUMERATION_HARD_MAX {
        return usage(format!(
            "enumeration is limited to n <= {ENUMERATION_HARD_MAX}"
        ));
    }
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().unwrap().get(&n).and_then(|c| c.get(&family)) {
        return Ok(t.clone());
    }
    let asms = all_asms(n);
    let t = Arc::new(build_table(&asms, n, family));
    Ok(map
        .lock()
        .unwrap()
        .entry(n)
        .or_default()
        .entry(family)
        .or_insert(t)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(t: &CountTable) -> Vec<i64> {
        t.iter().map(|(_, v)| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn refined_top_row() {
        let t = refined_table(3, Family::TopRow).unwrap();
        assert_eq!(values(&t), vec![2, 3, 2]);
        for n in 1..=6 {
            let t = refined_table(n, Family::TopRow).unwrap();
            for k in 1..=n as i64 {
                assert_eq!(t.get(&[k]), t.get(&[n as i64 + 1 - k]));
            }
        }
    }

    #[test]
    fn doubly_refined_examples() {
        assert_eq!(
            refined_table(3, Family::TopBottom).unwrap().get(&[1, 2]),
            1.into()
        );
        assert_eq!(
            refined_table(3, Family::TopLeft).unwrap().get(&[2, 2]),
            2.into()
        );
        assert_eq!(
            refined_table(3, Family::TopLeft).unwrap().get(&[0, 2]),
            0.into()
        );
    }

    #[test]
    fn totals_and_marginals() {
        for n in 1..=6 {
            let total = refined_table(n, Family::Total).unwrap().get(&[]);
            let rows = refined_table(n, Family::TopRow).unwrap();
            let sum: BigInt = rows.iter().map(|(_, v)| v).sum();
            assert_eq!(sum, total);
            if n >= 2 {
                let prev = refined_table(n - 1, Family::Total).unwrap().get(&[]);
                assert_eq!(rows.get(&[1]), prev);
            }
        }
    }

    #[test]
    fn two_top_is_zero_off_the_increasing_domain() {
        let t = refined_table(4, Family::TwoTop).unwrap();
        for (k, _) in t.iter() {
            assert!(k[0] < k[1]);
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.slug().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn table_serialization_round_trip() {
        let t = refined_table(3, Family::TopBottom).unwrap();
        let s = serde_json::to_string(&*t).unwrap();
        let back: CountTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, *t);
        assert!(s.contains("\"value\":\"1\""));
    }
}
