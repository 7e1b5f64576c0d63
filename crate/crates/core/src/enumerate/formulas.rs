//! Product formulas for the total and top-row refined counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{binom, factorial};

/// `A_n = prod_{j=0}^{n-1} (3j+1)! / (n+j)!`; `A_0 = 1`.
pub fn asm_total(n: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..n as u32 {
        num *= factorial(3 * j + 1);
        den *= factorial(n as u32 + j);
    }
    num / den
}

/// `A_{n,k} = binom(n+k-2, k-1) (2n-k-1)! / (n-k)! * prod_{j=0}^{n-2} (3j+1)! / (n+j)!`,
/// and 0 for `k` outside `[1, n]`.
pub fn asm_top_row(n: usize, k: i64) -> BigInt {
    let ni = n as i64;
    if n == 0 || k < 1 || k > ni {
        return BigInt::zero();
    }
    let mut num = binom(ni + k - 2, k - 1) * factorial((2 * ni - k - 1) as u32);
    let mut den = factorial((ni - k) as u32);
    for j in 0..n as u32 - 1 {
        num *= factorial(3 * j + 1);
        den *= factorial(n as u32 + j);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals() {
        let got: Vec<BigInt> = (0..=7).map(asm_total).collect();
        let want = [1, 1, 2, 7, 42, 429, 7436, 218348];
        assert_eq!(got, want.map(BigInt::from).to_vec());
    }

    #[test]
    fn top_row_sums_to_total() {
        for n in 1..=8 {
            let s: BigInt = (1..=n as i64).map(|k| asm_top_row(n, k)).sum();
            assert_eq!(s, asm_total(n));
        }
        assert_eq!(asm_top_row(4, 0), BigInt::zero());
        assert_eq!(asm_top_row(4, 2), BigInt::from(14));
    }
}
