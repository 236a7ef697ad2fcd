//! Gaussian binomial coefficients [n k]_q.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of k-dimensional subspaces of F_q^n; zero when k > n.
pub fn gaussian(n: u32, k: u32, q: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    num / den
}

/// [n k]_q for callers that know it fits.
pub fn gaussian_u128(n: u32, k: u32, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    // Pascal rule [n k] = [n-1 k-1] + q^k [n-1 k] keeps intermediates small
    let mut row = alloc::vec![1u128];
    for m in 1..=n {
        let mut next = alloc::vec![1u128; m as usize + 1];
        for j in 1..m as usize {
            next[j] = row[j - 1] + (q as u128).pow(j as u32) * row[j];
        }
        row = next;
    }
    row[k as usize]
}

/// q^e as a big integer.
pub fn qpow(q: u32, e: u32) -> BigInt {
    BigInt::from(q).pow(e)
}
