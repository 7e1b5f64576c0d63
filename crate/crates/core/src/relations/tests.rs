use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::conjecture::bareiss_rank;
use super::*;
use crate::report::Status;

fn holds(r: Result<IdentityReport>) -> IdentityReport {
    let r = r.unwrap();
    assert!(r.holds(), "{}", serde_json::to_string(&r).unwrap());
    r
}

#[test]
fn doubly_refined_relations() {
    for n in 1..=5 {
        holds(check_refined_binomial(n));
        let s = holds(check_stroganov(n));
        if n == 1 {
            assert_eq!(s.cases, 0);
        }
    }
    for n in 2..=5 {
        holds(check_karklinsky_romik(n));
        holds(check_two_top_binomial(n));
        holds(check_doubly_ilse(n));
        holds(check_antidiagonal(n));
        holds(check_combined_rotation(n));
    }
}

#[test]
fn stroganov_small_case_by_hand() {
    let tb = refined_table(3, Family::TopBottom).unwrap();
    let tl = refined_table(3, Family::TopLeft).unwrap();
    assert_eq!(tb.get(&[1, 2]), BigInt::from(1));
    assert_eq!(tl.get(&[2, 2]), BigInt::from(2));
    assert_eq!(tl.get(&[1, 3]), BigInt::from(0));
    assert_eq!(tl.get(&[2, 3]), BigInt::from(1));
}

#[test]
fn six_term_relation_needs_the_zero_convention() {
    let r = holds(check_karklinsky_romik(3));
    assert!(r.notes.iter().any(|n| n.contains("would fail")));
}

#[test]
fn combined_relation_flags_printed_sign() {
    let r = holds(check_combined_rotation(3));
    assert!(r.notes.iter().any(|n| n.contains("(1, 0)")));
}

#[test]
fn transfer_examples() {
    holds(check_topbottom_transfer(4, 1, 1, 1, Direction::BottomToTop));
    holds(check_topbottom_transfer(4, 1, 2, 1, Direction::BottomToTop));
    holds(check_topbottom_transfer(3, 2, 0, 2, Direction::BottomToTop));
    holds(check_topbottom_transfer(4, 0, 3, 2, Direction::TopToBottom));
    holds(check_topbottom_transfer(5, 1, 0, 1, Direction::BottomToTop));
    assert!(check_topbottom_transfer(4, 1, 1, 2, Direction::BottomToTop).is_err());
    assert!(check_topbottom_transfer(4, 0, 2, 1, Direction::BottomToTop).is_err());
}

#[test]
fn triple_relations() {
    for n in 3..=4 {
        holds(check_main_theorem(n));
        let (table, rep) = reconstruct_triple_table(n).unwrap();
        assert!(rep.holds());
        let direct = refined_table(n, Family::LeftTopRight).unwrap();
        for (k, v) in table.iter().chain(direct.iter()) {
            assert_eq!(&table.get(k), v);
            assert_eq!(&direct.get(k), v);
        }
    }
    for n in 2..=5 {
        holds(check_boundary_values(n));
    }
}

#[test]
fn inversions() {
    for n in 2..=4 {
        holds(check_elegant_inversions(n));
    }
}

#[test]
fn inversion_of_zero_is_zero() {
    for kind in [InversionKind::Diagonal, InversionKind::Binomial] {
        let b = CountTable::new("zero", 3, &["i", "j"]);
        let a = invert_elegant(kind, &b, 3).unwrap();
        assert!(a.iter().all(|(_, v)| v.is_zero()));
        assert!(!a.is_empty());
    }
}

#[test]
fn inversion_rejects_bad_support() {
    let mut b = CountTable::new("b", 3, &["i", "j"]);
    b.set(vec![1, 4], BigInt::from(1));
    assert!(invert_elegant(InversionKind::Diagonal, &b, 3).is_err());
    assert!(invert_elegant(InversionKind::Binomial, &b, 3).is_ok());
    let mut b = CountTable::new("b", 3, &["i", "j"]);
    b.set(vec![2, 0], BigInt::from(5));
    assert!(invert_elegant(InversionKind::Binomial, &b, 3).is_err());
    b.set(vec![2, 0], BigInt::from(0));
    assert!(invert_elegant(InversionKind::Binomial, &b, 3).is_ok());
}

#[test]
fn single_entry_inversion() {
    let mut b = CountTable::new("b", 2, &["i", "j"]);
    b.set(vec![1, 1], BigInt::from(1));
    let a = invert_elegant(InversionKind::Binomial, &b, 2).unwrap();
    // A_{i,j} = binom(i+j-2, i-1) for i, j >= 1
    assert_eq!(a.get(&[3, 2]), BigInt::from(3));
    assert_eq!(a.get(&[2, 2]), BigInt::from(2));
    let a = invert_elegant(InversionKind::Diagonal, &b, 2).unwrap();
    assert_eq!(a.get(&[2, 0]), BigInt::from(1));
    assert_eq!(a.get(&[2, 1]), BigInt::from(0));
}

#[test]
fn oracles_agree() {
    for n in 1..=4 {
        holds(check_triple_oracle(n));
        for (c, d) in [(0, 0), (1, 1), (1, 2), (2, 2)] {
            if c + d <= n {
                holds(check_decomposition(n, c, d));
            }
        }
    }
}

#[test]
fn conjecture_system_shape() {
    let prev = CountTable::new("A", 1, &[]);
    let sys = build_conjecture_system(2, 1, &prev, BoundaryMode::Zero).unwrap();
    assert_eq!(sys.unknowns(), 2);
    for r in &sys.rows {
        match r.family {
            EquationFamily::Reflection => {
                assert_eq!(r.coeffs.len(), 2);
                let mut v: Vec<i64> = r
                    .coeffs
                    .values()
                    .map(|c| i64::try_from(c).unwrap())
                    .collect();
                v.sort();
                assert_eq!(v, vec![-1, 1]);
            }
            EquationFamily::Reduction => {
                assert_eq!(r.coeffs.len(), 1);
                assert_eq!(r.rhs, BigInt::from(1));
            }
            _ => {}
        }
    }
    // d = 1, n = 2: x(1) = -x(1) binom(2, 0) ... reduces to x(1) = x(2)
    let known = |i: &[i64]| BigInt::from([1, 1][i[0] as usize - 1]);
    assert!(sys.first_violation(known).is_none());
    assert!(sys.first_violation(|_| BigInt::from(3)).is_some());
}

#[test]
fn conjecture_known_values_satisfy() {
    for (n, d) in [(1, 1), (2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (3, 3)] {
        for mode in [BoundaryMode::Zero, BoundaryMode::Restrict] {
            let r = check_conjecture_uniqueness(n, d, mode).unwrap();
            assert!(r.known_values_satisfy, "{r:?}");
            assert_eq!(r.unknowns, n.pow(d as u32));
            assert_eq!(r, check_conjecture_uniqueness(n, d, mode).unwrap());
        }
    }
    assert!(check_conjecture_uniqueness(3, 0, BoundaryMode::Zero).is_err());
    assert!(check_conjecture_uniqueness(2, 3, BoundaryMode::Zero).is_err());
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn fraction_free_rank_matches_rational_elimination() {
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]],
        vec![vec![0, 0, 0], vec![0, 0, 0]],
        vec![
            vec![0, 2, 4, 1],
            vec![0, 1, 2, 3],
            vec![5, 0, 0, 0],
            vec![5, 3, 6, 4],
        ],
        vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
    ];
    for rows in cases {
        let cols = rows[0].len();
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(bareiss_rank(&mut m, cols), rational_rank(&rows), "{rows:?}");
    }
}

#[test]
fn identity_registry() {
    for id in Identity::ALL {
        assert_eq!(id.slug().parse::<Identity>().unwrap(), id);
    }
    assert!("nope".parse::<Identity>().is_err());
    let r = Identity::Stroganov.run(Checker::new(&Computed), 1).unwrap();
    assert_eq!(r.status, Status::Holds);
    assert!(Identity::MainTheorem
        .run(Checker::new(&Computed), 2)
        .is_err());
}

use crate::enumerate::refined_table;
