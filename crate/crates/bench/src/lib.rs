//! Benchmark inputs shared by the bench targets.

use asmrel::enumerate::RefinementSpec;

/// A spec with `c` bottom and `d` top positions spread across `[1, n]`.
pub fn spread_spec(n: usize, c: usize, d: usize) -> RefinementSpec {
    let pick = |k: usize, offset: usize| {
        (0..k)
            .map(|t| 1 + (offset + t * n / k.max(1)) % n)
            .collect::<Vec<_>>()
    };
    let mut bottom = pick(c, 0);
    let mut top = pick(d, 1);
    bottom.sort_unstable();
    bottom.dedup();
    top.sort_unstable();
    top.dedup();
    RefinementSpec::new(n, bottom, top).expect("valid spec")
}
