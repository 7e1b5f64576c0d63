//! Agreement between the independent ways of computing refined counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::need_symbolic;
use crate::coeffs::{complement_alpha, extract_coefficients, COEFF_MAX_CD};
use crate::enumerate::{
    all_asms, asm_total, count_monotone_triangles, count_partial, increasing_tuples,
    partial_census, RefinementSpec,
};
use crate::error::{usage, Result};
use crate::report::IdentityReport;
use crate::shiftops::alpha_operator;

fn triangles(bottom: &[i64]) -> Result<BigInt> {
    if bottom.is_empty() {
        return Ok(BigInt::one());
    }
    count_monotone_triangles(bottom)
}

fn positions(v: &[i64]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

/// `A_n = sum_{S, I} alpha(d; I) A(n; S; I) alpha(c; S)` over strictly
/// increasing `S` of length `c` and `I` of length `d`, with the middle counts
/// from [`count_partial`] and the outer factors from the triangle recursion.
pub fn check_decomposition(n: usize, c: usize, d: usize) -> Result<IdentityReport> {
    if n == 0 || c + d > n || n > 12 {
        return usage("decomposition needs 1 <= n <= 12 and c + d <= n");
    }
    let ni = n as i64;
    let mut rep = IdentityReport::new(
        "decomposition",
        &[("n", ni), ("c", c as i64), ("d", d as i64)],
        "sum over all strictly increasing (S; I)",
    );
    let mut sum = BigInt::zero();
    for s in increasing_tuples(c, 1, ni) {
        let outer_s = triangles(&s)?;
        for i in increasing_tuples(d, 1, ni) {
            let spec = RefinementSpec::new(n, positions(&s), positions(&i))?;
            let mid = count_partial(&spec)?;
            if !mid.is_zero() {
                sum += triangles(&i)? * mid * &outer_s;
            }
        }
    }
    rep.check(&[c as i64, d as i64], &sum, &asm_total(n));
    Ok(rep)
}

/// Every strictly increasing spec of size `n` with `c + d <= 3`, computed by
/// the parity dynamic program, by distinct middle matrices of enumerated
/// ASMs, and as a binomial-basis coefficient; for `c = 0` also as `alpha` of
/// the complement. Separately, the triangle recursion against the operator
/// formula on all increasing bottom rows of length `n` in `[1, n+3]`.
///
/// Witness tags: 0 recursion/operator, 1 coefficient, 2 enumeration,
/// 3 complement; spec witnesses are `[tag, c, d, s.., i..]`.
pub fn check_triple_oracle(n: usize) -> Result<IdentityReport> {
    need_symbolic(n, 1, "oracle agreement")?;
    let ni = n as i64;
    let mut rep = IdentityReport::new(
        "triple-oracle",
        &[("n", ni)],
        format!(
            "increasing specs with c + d <= {}; bottom rows in [1, {}]",
            COEFF_MAX_CD.min(n),
            ni + 3
        ),
    );
    for k in increasing_tuples(n, 1, ni + 3) {
        let mut w = vec![0];
        w.extend(&k);
        rep.check(&w, &count_monotone_triangles(&k)?, &alpha_operator(&k)?);
    }
    let asms = all_asms(n);
    for total in 0..=COEFF_MAX_CD.min(n) {
        for c in 0..=total {
            let d = total - c;
            let coeffs = extract_coefficients(n, c, d)?;
            let census = partial_census(&asms, n, c, d);
            for s in increasing_tuples(c, 1, ni) {
                for i in increasing_tuples(d, 1, ni) {
                    let spec = RefinementSpec::new(n, positions(&s), positions(&i))?;
                    let dp = count_partial(&spec)?;
                    let mut key = s.clone();
                    key.extend(&i);
                    let w = |tag: i64| {
                        let mut w = vec![tag, c as i64, d as i64];
                        w.extend(&key);
                        w
                    };
                    rep.check(&w(1), &coeffs.get(&s, &i), &dp);
                    let counted = census.get(&key).cloned().unwrap_or_else(BigInt::zero);
                    rep.check(&w(2), &counted, &dp);
                    if c == 0 {
                        rep.check(&w(3), &complement_alpha(n, &spec.top)?, &dp);
                    }
                }
            }
        }
    }
    Ok(rep)
}
