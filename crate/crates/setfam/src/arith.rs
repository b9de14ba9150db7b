//! Exact big-integer binomials and rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `C(n, r)`, exactly, with `C(n, r) = 0` for `r < 0` or `r > n`.
pub fn binomial(n: u64, r: i64) -> BigUint {
    if r < 0 || r as u64 > n {
        return BigUint::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc holds C(n, i); the division is exact.
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `1 / x` as an exact rational; `x` must be positive.
pub fn inverse(x: &BigUint) -> BigRational {
    assert!(!x.is_zero(), "inverse of zero");
    BigRational::new(BigInt::one(), BigInt::from(x.clone()))
}

/// `p / q` as an exact reduced rational.
pub fn ratio(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p/q` (always with an explicit denominator).
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
