use num_bigint::BigUint;
use num_integer::Integer;

use crate::Error;

/// Largest `k` accepted by [`sufficiency_exact`]; the powers involved have
/// about `6k²·log₂(k+2)` bits.
pub const MAX_EXACT_K: u32 = 256;

/// `1 − (k−1)²/(6k²)`, the guaranteed fraction of input written per block.
pub fn ratio_bound_factor(k: u32) -> f64 {
    let k = k as f64;
    1.0 - (k - 1.0) * (k - 1.0) / (6.0 * k * k)
}

/// Upper bound on the compression ratio, `(1 − (k−1)²/(6k²))·ln(k+2)/ln k`.
pub fn ratio_bound(k: u32) -> f64 {
    ratio_bound_factor(k) * libm::log(k as f64 + 2.0) / libm::log(k as f64)
}

/// `(k+2, a, k, b)` such that `ratio_bound(k) < 1` iff `(k+2)^a < k^b`,
/// with the exponents divided by their gcd.
///
/// The bound is below one iff `(6k² − (k−1)²)·ln(k+2) < 6k²·ln k`.
pub fn sufficiency_exponents(k: u32) -> (u64, u64, u64, u64) {
    let k = k as u64;
    let right = 6 * k * k;
    let left = right - (k - 1) * (k - 1);
    let g = left.gcd(&right);
    (k + 2, left / g, k, right / g)
}

/// Exact integer check that `ratio_bound(k) < 1`.
pub fn sufficiency_exact(k: u32) -> Result<bool, Error> {
    if !(2..=MAX_EXACT_K).contains(&k) {
        return Err(Error::Domain("exact sufficiency check needs 2 <= k <= 256"));
    }
    let (lb, le, rb, re) = sufficiency_exponents(k);
    let lhs = BigUint::from(lb).pow(le as u32);
    let rhs = BigUint::from(rb).pow(re as u32);
    Ok(lhs < rhs)
}
